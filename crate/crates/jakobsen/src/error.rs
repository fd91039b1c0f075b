use thiserror::Error;

use crate::root_system::Family;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: String, reason: String },
    #[error("pairing against the zero vector")]
    DegenerateRoot,
    #[error("no compact simple root mu{0} in this system")]
    UnknownLabel(usize),
    #[error("{0} is not a noncompact positive root")]
    NotNoncompact(String),
    #[error("{op} is not available for {family}")]
    Unsupported { op: &'static str, family: Family },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("classifier inconsistency: {0}")]
    Inconsistency(String),
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: i64, bound: i64 },
    #[error("unknown format `{0}`")]
    UnknownFormat(String),
    #[error("catalog: {0}")]
    Catalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
