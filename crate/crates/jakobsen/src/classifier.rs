//! Last place of unitarity, reduction points and missing highest weights.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jakobsen_diagram::{build_diagram, c_counts};
use crate::rational::{frac, is_positive_integer, q, to_i64, Q};
use crate::root_system::{pair, weyl_reflect, Family, Labels, Root, RootSystem, Weight};

/// Step between consecutive reduction points.
pub fn lambda_s_table(family: Family) -> Result<Q> {
    match family {
        Family::Su { .. } => Ok(q(-1)),
        Family::Sp { .. } => Ok(frac(-1, 2)),
        Family::SoStar { .. } => Ok(q(-2)),
        Family::E6 => Ok(q(-3)),
        Family::E7 => Ok(q(-4)),
        Family::SoOdd { .. } | Family::SoEven { .. } => Err(Error::Unsupported {
            op: "lambda_s",
            family,
        }),
    }
}

/// The table value of λ_s, checked against `-c_j/2 = (j-1) λ_s` along the
/// split-rank sequence.
pub fn lambda_s(rs: &RootSystem) -> Result<Q> {
    let ls = lambda_s_table(rs.family)?;
    let d = build_diagram(rs);
    let seq = d.split_rank_sequence();
    for (j, c) in c_counts(rs, &seq).into_iter().enumerate() {
        let lq = -q(c as i64) / q(2);
        if lq != q(j as i64) * &ls {
            return Err(Error::Invariant(format!(
                "{}: c_{} = {c} does not match lambda_s = {ls}",
                rs.family,
                j + 1
            )));
        }
    }
    Ok(ls)
}

/// `α ∈ Δ_n⁺` such that `<Λ0, μ> ≥ max(1, <α, μ>)` whenever `α - μ ∈ Δ_n⁺`.
pub fn eligible_roots(rs: &RootSystem, lambda0_weight: &Weight) -> Vec<Root> {
    rs.noncompact
        .iter()
        .filter(|a| {
            rs.compact_simple.iter().all(|(_, m)| {
                rs.noncompact_index(&(*a - m)).is_none() || {
                    let am = pair(a, m);
                    let bound = if am > Q::one() { am } else { Q::one() };
                    pair(lambda0_weight, m) >= bound
                }
            })
        })
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LastPlace {
    pub lambda0: Q,
    pub alpha0: Root,
    /// Other eligible roots reaching the same minimum.
    pub ties: Vec<Root>,
}

/// Solves `<Λ0 + λε + R, α> = 1` for each eligible α and keeps the minimum,
/// breaking ties by (height, coordinates).
pub fn last_place(rs: &RootSystem, lambda0_weight: &Weight) -> LastPlace {
    let mut cands: Vec<(Q, i64, Root)> = eligible_roots(rs, lambda0_weight)
        .into_iter()
        .map(|a| {
            let lam = (Q::one() - pair(lambda0_weight, &a) - pair(&rs.rho, &a))
                / pair(&rs.epsilon, &a);
            (lam, rs.height(&a), a)
        })
        .collect();
    cands.sort();
    let (lambda0, _, alpha0) = cands[0].clone();
    let ties = cands[1..]
        .iter()
        .filter(|c| c.0 == lambda0)
        .map(|c| c.2.clone())
        .collect();
    LastPlace {
        lambda0,
        alpha0,
        ties,
    }
}

pub fn is_k1_dominant(rs: &RootSystem, w: &Weight) -> bool {
    rs.compact_simple.iter().all(|(_, m)| !pair(w, m).is_negative())
}

/// The integers `n_i` of the sequence, or `None` when some step is not a
/// positive integer multiple of its root.
pub fn condition_a_steps(rs: &RootSystem, lambda: &Weight, seq: &[Root]) -> Option<Vec<Q>> {
    let mut x = lambda + &rs.rho;
    let mut ns = Vec::with_capacity(seq.len());
    for a in seq {
        let n = pair(&x, a);
        if !is_positive_integer(&n) {
            return None;
        }
        x = weyl_reflect(&x, a);
        ns.push(n);
    }
    Some(ns)
}

pub fn check_condition_a(rs: &RootSystem, lambda: &Weight, seq: &[Root]) -> bool {
    condition_a_steps(rs, lambda, seq).is_some()
}

/// Depth-first search for a condition-(A) sequence drawn from `candidates`
/// whose steps add up to `omega`.
pub fn find_condition_a_sequence(
    rs: &RootSystem,
    lambda: &Weight,
    omega: &Weight,
    candidates: &[Root],
    max_len: usize,
) -> Option<Vec<Root>> {
    let Some(target) = rs.int_coefficients(omega) else {
        return None;
    };
    let cand: Vec<(&Root, Vec<i64>)> = candidates
        .iter()
        .map(|a| (a, rs.int_coefficients(a).expect("root")))
        .collect();
    let mut seq = Vec::new();
    if search(&cand, &(lambda + &rs.rho), &target, max_len, &mut seq) {
        Some(seq.into_iter().cloned().collect())
    } else {
        None
    }
}

fn search<'a>(
    cand: &[(&'a Root, Vec<i64>)],
    x: &Weight,
    rem: &[i64],
    max_len: usize,
    seq: &mut Vec<&'a Root>,
) -> bool {
    if rem.iter().all(|&c| c == 0) {
        return true;
    }
    if seq.len() >= max_len {
        return false;
    }
    for (a, ca) in cand {
        let n = pair(x, a);
        if !is_positive_integer(&n) {
            continue;
        }
        let n = n.to_integer().to_i64().expect("small");
        let next: Vec<i64> = rem.iter().zip(ca).map(|(r, c)| r - n * c).collect();
        if next.iter().any(|&c| c < 0) {
            continue;
        }
        seq.push(a);
        if search(cand, &weyl_reflect(x, a), &next, max_len, seq) {
            return true;
        }
        seq.pop();
    }
    false
}

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub root: Root,
    pub coefficient: u64,
    /// `(j, i)` of `α_j^i` within the forward cone of α0.
    pub height: i64,
    pub index: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedRoot {
    pub root: Root,
    pub height: i64,
    pub index: usize,
    #[serde(with = "crate::rational::as_str")]
    pub pairing: Q,
}

#[derive(Clone, Debug, Serialize)]
pub struct MissingWeight {
    #[serde(with = "crate::rational::as_str")]
    pub lambda_q: Q,
    pub order: u64,
    pub omega: Weight,
    pub terms: Vec<Term>,
    pub highest_weight: Weight,
    pub certificate: Option<Vec<Root>>,
    /// Cone roots between this level and the previous one whose pairing
    /// with `Λ_q + R` is not a positive integer.
    pub skipped: Vec<SkippedRoot>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub lambda0_weight: Weight,
    pub alpha0: Root,
    pub alpha0_height: i64,
    #[serde(with = "crate::rational::as_str")]
    pub lambda0: Q,
    #[serde(with = "crate::rational::as_str")]
    pub lambda_s: Q,
    pub reduction_level: usize,
    pub missing: Vec<MissingWeight>,
    /// λ0 + (reduction_level - 1) λ_s.
    #[serde(with = "crate::rational::as_str")]
    pub first_nonunitary_place: Q,
    pub ties: Vec<Root>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "order")]
pub enum Verdict {
    UnitaryContinuous,
    UnitaryPoint(u64),
    NonUnitary,
}

/// Runs the level-by-level construction of missing weights.
///
/// At level `k` the candidate is the slice of the forward cone of α0 at
/// height `h0 + k·step`, with `step = -λ_s · max <ε, α>`; each slice root
/// enters `ω_q` with multiplicity `<Λ_q + R, α>`. A level is accepted when
/// the multiplicities are positive integers adding up to `k + 1`, `Λ0 - ω_q`
/// is k1-dominant, and a condition-(A) certificate exists.
pub fn classify(rs: &RootSystem, labels: &Labels) -> Result<ClassificationResult> {
    let lam0w = rs.resolve_weight(labels)?;
    let ls = lambda_s(rs)?;
    let LastPlace {
        lambda0,
        alpha0,
        ties,
    } = last_place(rs, &lam0w);
    let max_eps = rs
        .noncompact
        .iter()
        .map(|a| pair(&rs.epsilon, a))
        .max()
        .expect("nonempty");
    let step = to_i64(&(-&ls * max_eps))
        .ok_or_else(|| Error::Invariant("non-integral height step".into()))?;

    let d = build_diagram(rs);
    let grid = d.cone_grid(&alpha0)?;
    let cone: Vec<Root> = grid.keys().map(|&i| d.node(i).clone()).collect();
    let h0 = rs.height(&alpha0);

    let mut missing = Vec::new();
    for k in 0i64.. {
        let lambda_q = &lambda0 + q(k) * &ls;
        let lam = &lam0w + &rs.epsilon.scale(&lambda_q);
        let shifted = &lam + &rs.rho;
        let h = h0 + k * step;
        let slice: Vec<usize> = grid.iter().filter(|(_, g)| g.0 == h).map(|(&i, _)| i).collect();
        let ns: Vec<Q> = slice.iter().map(|&i| pair(&shifted, d.node(i))).collect();
        if slice.is_empty() || !ns.iter().all(is_positive_integer) {
            break;
        }
        let order = ns.iter().fold(Q::zero(), |a, b| a + b);
        if order != q(k + 1) {
            break;
        }
        let mut omega = Weight::zero(rs.dim);
        for (&i, n) in slice.iter().zip(&ns) {
            omega += &d.node(i).scale(n);
        }
        if !is_k1_dominant(rs, &(&lam0w - &omega)) {
            break;
        }
        let certificate = find_condition_a_sequence(rs, &lam, &omega, &cone, k as usize + 3)
            .ok_or_else(|| {
                Error::Inconsistency(format!(
                    "{}: no condition-(A) sequence for level {} at lambda {}",
                    rs.family,
                    k,
                    crate::rational::fmt_q(&lambda_q)
                ))
            })?;
        log::debug!("{} level {k}: certificate of length {}", rs.family, certificate.len());
        let mut terms: Vec<Term> = slice
            .iter()
            .zip(&ns)
            .map(|(&i, n)| Term {
                root: d.node(i).clone(),
                coefficient: n.to_integer().to_u64().expect("positive"),
                height: grid[&i].0,
                index: grid[&i].1,
            })
            .collect();
        terms.sort_by_key(|t| t.index);
        let skipped = grid
            .iter()
            .filter(|(_, g)| g.0 > h - step && g.0 < h)
            .filter_map(|(&i, g)| {
                let p = pair(&shifted, d.node(i));
                (!is_positive_integer(&p)).then(|| SkippedRoot {
                    root: d.node(i).clone(),
                    height: g.0,
                    index: g.1,
                    pairing: p,
                })
            })
            .collect();
        missing.push(MissingWeight {
            highest_weight: &shifted - &omega,
            lambda_q,
            order: (k + 1) as u64,
            omega,
            terms,
            certificate: Some(certificate),
            skipped,
        });
    }
    if missing.is_empty() {
        return Err(Error::Inconsistency(format!(
            "{}: the last place of unitarity produced no missing weight",
            rs.family
        )));
    }
    let reduction_level = missing.len();
    let first_nonunitary_place = &lambda0 + q(reduction_level as i64 - 1) * &ls;
    Ok(ClassificationResult {
        lambda0_weight: lam0w,
        alpha0_height: h0,
        alpha0,
        lambda0,
        lambda_s: ls,
        reduction_level,
        missing,
        first_nonunitary_place,
        ties,
    })
}

impl ClassificationResult {
    pub fn verdict(&self, lambda: &Q) -> Verdict {
        unitarity_verdict(self, lambda)
    }
}

pub fn unitarity_verdict(result: &ClassificationResult, lambda: &Q) -> Verdict {
    if lambda > &result.lambda0 {
        return Verdict::NonUnitary;
    }
    if lambda < &result.first_nonunitary_place {
        return Verdict::UnitaryContinuous;
    }
    let k = (lambda - &result.lambda0) / &result.lambda_s;
    if k.is_integer() {
        Verdict::UnitaryPoint(k.to_integer().to_u64().expect("non-negative") + 1)
    } else {
        Verdict::NonUnitary
    }
}
