//! Exact classification of unitarizable highest weight modules for the
//! non-compact hermitian symmetric pairs su(p,q), sp(n,R), so*(2n), so(m,2),
//! e6(-14) and e7(-25).
//!
//! The pipeline is root data ([`root_system`]), the diagram of noncompact
//! positive roots ([`jakobsen_diagram`]), the reduction-point classifier
//! ([`classifier`]), weight bookkeeping of formal extremal vectors ([`hwv`]),
//! and a brute-force contravariant form for tiny algebras
//! ([`shapovalov_oracle`]). All arithmetic is over exact rationals.

pub mod classifier;
mod error;
pub mod hwv;
pub mod jakobsen_diagram;
pub mod linalg;
pub mod rational;
pub mod root_system;
pub mod shapovalov_oracle;

pub use error::{Error, Result};
pub use rational::{Q, Vector};
pub use root_system::{Family, Labels, Root, RootSystem, Simple, Weight};
