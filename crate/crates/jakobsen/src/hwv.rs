//! Weight bookkeeping for formal products of powers of lowering operators.
//!
//! A factor `E_{-α}^k` lowers weights by `k α`; exponents may be negative or
//! fractional and may depend affinely on the labels `n_k`. Only the net
//! weight drop is computed, never the operators themselves.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::classifier::classify;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, Q};
use crate::root_system::{Family, Labels, Root, RootSystem, Simple, Weight};

/// `constant + Σ coeffs[k] · n_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Affine {
    pub constant: Q,
    pub coeffs: BTreeMap<usize, Q>,
}

impl Affine {
    pub fn constant(c: Q) -> Self {
        Affine {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, labels: &Labels) -> Q {
        self.coeffs.iter().fold(self.constant.clone(), |acc, (k, c)| {
            acc + c * Q::from_integer((*labels.get(k).unwrap_or(&0)).into())
        })
    }

    fn add_assign(&mut self, o: &Affine) {
        self.constant += &o.constant;
        for (k, c) in &o.coeffs {
            let e = self.coeffs.entry(*k).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                self.coeffs.remove(k);
            }
        }
    }
}

impl FromStr for Affine {
    type Err = Error;

    /// Accepts sums such as `-n1-n2-4`, `n6+n7+3`, `3/2`, `2n5-1`.
    fn from_str(s: &str) -> Result<Affine> {
        let bad = || Error::Catalog(format!("bad exponent `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = Affine::default();
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if i > 0 && (ch == '+' || ch == '-') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        for t in terms {
            let (neg, body) = match t.as_bytes().first() {
                Some(b'-') => (true, &t[1..]),
                Some(b'+') => (false, &t[1..]),
                _ => (false, t),
            };
            let value = match body.find('n') {
                Some(pos) => {
                    let coef = if pos == 0 {
                        Q::one()
                    } else {
                        parse_q(&body[..pos]).ok_or_else(bad)?
                    };
                    let k: usize = body[pos + 1..].parse().map_err(|_| bad())?;
                    let e = out.coeffs.entry(k).or_insert_with(Q::zero);
                    *e += if neg { -coef } else { coef };
                    continue;
                }
                None => parse_q(body).ok_or_else(bad)?,
            };
            out.constant += if neg { -value } else { value };
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (k, c) in &self.coeffs {
            let sign = if c.is_negative() { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = c.abs();
            let m = if mag.is_one() { String::new() } else { fmt_q(&mag) };
            s.push_str(&format!("{sign}{m}n{k}"));
        }
        if !self.constant.is_zero() || s.is_empty() {
            let sign = if self.constant.is_negative() {
                "-"
            } else if s.is_empty() {
                ""
            } else {
                "+"
            };
            s.push_str(&format!("{sign}{}", fmt_q(&self.constant.abs())));
        }
        f.write_str(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub root: Root,
    pub exponent: Q,
}

/// Ordered product of `E_{-root}^{exponent}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalExpression {
    pub dim: usize,
    pub factors: Vec<Factor>,
}

impl FormalExpression {
    pub fn new(dim: usize) -> Self {
        FormalExpression {
            dim,
            factors: Vec::new(),
        }
    }

    pub fn concat(&self, other: &FormalExpression) -> FormalExpression {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        FormalExpression {
            dim: self.dim,
            factors,
        }
    }
}

/// `Σ exponent · root`.
pub fn net_lowering(expr: &FormalExpression) -> Weight {
    let mut w = Weight::zero(expr.dim);
    for f in &expr.factors {
        w += &f.root.scale(&f.exponent);
    }
    w
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicFactor {
    pub simple: Simple,
    pub exponent: Affine,
    /// The exponent as it was printed, when the reading above repairs it.
    pub printed: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolicExpression {
    pub factors: Vec<SymbolicFactor>,
}

impl SymbolicExpression {
    /// Net drop per simple root, as affine forms in the labels.
    pub fn net_lowering(&self) -> BTreeMap<Simple, Affine> {
        let mut out: BTreeMap<Simple, Affine> = BTreeMap::new();
        for f in &self.factors {
            out.entry(f.simple).or_default().add_assign(&f.exponent);
        }
        out
    }

    pub fn instantiate(&self, rs: &RootSystem, labels: &Labels) -> Result<FormalExpression> {
        let factors = self
            .factors
            .iter()
            .map(|f| {
                let root = rs.simple_root(f.simple).ok_or(match f.simple {
                    Simple::Mu(k) => Error::UnknownLabel(k),
                    Simple::Beta => Error::Invariant("beta".into()),
                })?;
                Ok(Factor {
                    root: root.clone(),
                    exponent: f.exponent.eval(labels),
                })
            })
            .collect::<Result<_>>()?;
        Ok(FormalExpression {
            dim: rs.dim,
            factors,
        })
    }
}

pub const CATALOG_JSON: &str = include_str!("../data/hwv_catalog.json");
pub const CATALOG_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize)]
pub struct Catalog {
    pub schema_version: u32,
    pub entries: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RawFactor {
    Plain(String, String),
    Repaired(String, String, String),
}

#[derive(Clone, Debug, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub family: Family,
    /// Height of the roots making up the drop.
    pub height: i64,
    /// Index of the reduction point, 0 for the last place of unitarity.
    pub level: usize,
    /// λ_q of the claimed highest weight `Λ0 + λ_q ε + R - drop`.
    pub lambda: String,
    /// Labels that must vanish for the expression to apply.
    #[serde(default)]
    pub zero_labels: Vec<usize>,
    pub instantiations: Vec<Labels>,
    pub factors: Vec<RawFactor>,
    pub drop: BTreeMap<String, String>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl CatalogEntry {
    pub fn expression(&self) -> Result<SymbolicExpression> {
        let factors = self
            .factors
            .iter()
            .map(|raw| {
                let (s, e, printed) = match raw {
                    RawFactor::Plain(s, e) => (s, e, None),
                    RawFactor::Repaired(s, e, p) => (s, e, Some(p.clone())),
                };
                Ok(SymbolicFactor {
                    simple: s.parse().map_err(Error::Catalog)?,
                    exponent: e.parse()?,
                    printed,
                })
            })
            .collect::<Result<_>>()?;
        Ok(SymbolicExpression { factors })
    }

    pub fn claimed_drop(&self) -> Result<BTreeMap<Simple, Q>> {
        self.drop
            .iter()
            .map(|(s, c)| {
                let s: Simple = s.parse().map_err(Error::Catalog)?;
                let c = parse_q(c).ok_or_else(|| Error::Catalog(format!("bad coefficient `{c}`")))?;
                Ok((s, c))
            })
            .collect()
    }

    pub fn lambda_q(&self) -> Result<Q> {
        parse_q(&self.lambda).ok_or_else(|| Error::Catalog(format!("bad lambda `{}`", self.lambda)))
    }
}

pub fn load_catalog(json: &str) -> Result<Catalog> {
    let c: Catalog = serde_json::from_str(json).map_err(|e| Error::Catalog(e.to_string()))?;
    if c.schema_version != CATALOG_SCHEMA_VERSION {
        return Err(Error::Catalog(format!(
            "schema version {} (expected {CATALOG_SCHEMA_VERSION})",
            c.schema_version
        )));
    }
    Ok(c)
}

#[derive(Clone, Debug, Serialize)]
pub struct InstantiationReport {
    pub labels: Labels,
    pub drop_ok: bool,
    pub classifier_ok: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub family: String,
    pub height: i64,
    /// Net drop per simple root, symbolically.
    pub symbolic_drop: BTreeMap<String, String>,
    pub symbolic_ok: bool,
    pub failures: Vec<String>,
    pub repairs: Vec<String>,
    pub instantiations: Vec<InstantiationReport>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub schema_version: u32,
    pub passed: usize,
    pub total: usize,
    pub entries: Vec<EntryReport>,
}

pub fn verify_catalog() -> Result<CatalogReport> {
    verify(&load_catalog(CATALOG_JSON)?)
}

/// Checks each entry symbolically and under each instantiation, against
/// both its claimed drop and the classifier's `ω_q` at the entry's level.
pub fn verify(catalog: &Catalog) -> Result<CatalogReport> {
    let mut entries = Vec::new();
    for entry in &catalog.entries {
        entries.push(verify_entry(entry)?);
    }
    Ok(CatalogReport {
        schema_version: catalog.schema_version,
        passed: entries.iter().filter(|e| e.ok).count(),
        total: entries.len(),
        entries,
    })
}

fn verify_entry(entry: &CatalogEntry) -> Result<EntryReport> {
    let expr = entry.expression()?;
    let claimed = entry.claimed_drop()?;
    let lambda_q = entry.lambda_q()?;
    let rs = RootSystem::build(entry.family)?;

    let symbolic = expr.net_lowering();
    let mut failures = Vec::new();
    let keys: std::collections::BTreeSet<Simple> =
        symbolic.keys().chain(claimed.keys()).copied().collect();
    for s in keys {
        let got = symbolic.get(&s).cloned().unwrap_or_default();
        let want = claimed.get(&s).cloned().unwrap_or_else(Q::zero);
        if !got.is_constant() || got.constant != want {
            failures.push(format!("coefficient of {s}: expression gives {got}, claimed {}", fmt_q(&want)));
        }
    }
    let symbolic_ok = failures.is_empty();

    let claimed_vec = rs.expand(&claimed);
    let mut instantiations = Vec::new();
    for labels in &entry.instantiations {
        let mut fails = Vec::new();
        if let Some(k) = entry.zero_labels.iter().find(|k| labels.get(k).copied().unwrap_or(0) != 0) {
            fails.push(format!("label n{k} must vanish"));
        }
        let drop = net_lowering(&expr.instantiate(&rs, labels)?);
        let drop_ok = drop == claimed_vec;
        if !drop_ok {
            for (s, (got, want)) in rs
                .simple_roots()
                .iter()
                .map(|(s, _)| *s)
                .zip(rs.coefficients(&drop).iter().zip(rs.coefficients(&claimed_vec)))
            {
                if got != &want {
                    fails.push(format!("coefficient of {s}: {} vs claimed {}", fmt_q(got), fmt_q(&want)));
                }
            }
        }
        let classifier_ok = match classify(&rs, labels) {
            Ok(res) => match res.missing.get(entry.level) {
                Some(m) => {
                    let lam0w = rs.resolve_weight(labels)?;
                    let claimed_hw =
                        &(&(&lam0w + &rs.epsilon.scale(&lambda_q)) + &rs.rho) - &claimed_vec;
                    let mut ok = true;
                    if m.lambda_q != lambda_q {
                        fails.push(format!("classifier lambda_q {} at level {}", fmt_q(&m.lambda_q), entry.level));
                        ok = false;
                    }
                    if m.omega != drop {
                        fails.push(format!("classifier omega_q {} differs from drop {drop}", m.omega));
                        ok = false;
                    }
                    if m.highest_weight != claimed_hw {
                        fails.push("claimed highest weight differs from the classifier's".into());
                        ok = false;
                    }
                    if m.terms.iter().any(|t| t.height != entry.height) {
                        fails.push(format!("classifier terms are not at height {}", entry.height));
                        ok = false;
                    }
                    ok
                }
                None => {
                    fails.push(format!("classifier has no level {}", entry.level));
                    false
                }
            },
            Err(e) => {
                fails.push(format!("classifier failed: {e}"));
                false
            }
        };
        instantiations.push(InstantiationReport {
            labels: labels.clone(),
            drop_ok,
            classifier_ok,
            failures: fails,
        });
    }
    let repairs = expr
        .factors
        .iter()
        .enumerate()
        .filter_map(|(i, f)| {
            f.printed.as_ref().map(|p| {
                format!("factor {} (E_-{}): printed `{p}`, read as `{}`", i + 1, f.simple, f.exponent)
            })
        })
        .collect();
    let ok = symbolic_ok
        && instantiations.len() >= 3
        && instantiations
            .iter()
            .all(|r| r.drop_ok && r.classifier_ok && r.failures.is_empty());
    Ok(EntryReport {
        id: entry.id.clone(),
        family: entry.family.to_string(),
        height: entry.height,
        symbolic_drop: symbolic.iter().map(|(s, a)| (s.ascii(), a.to_string())).collect(),
        symbolic_ok,
        failures,
        repairs,
        instantiations,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn affine_round_trip() {
        let a: Affine = "-n1-n2-n3-4".parse().unwrap();
        assert_eq!(a.constant, q(-4));
        assert_eq!(a.coeffs.len(), 3);
        assert_eq!(a.to_string(), "-n1-n2-n3-4");
        let b: Affine = "3/2".parse().unwrap();
        assert_eq!(b, Affine::constant(frac(3, 2)));
        let c: Affine = "2n5+n6-1".parse().unwrap();
        assert_eq!(c.to_string(), "2n5+n6-1");
        assert!("n".parse::<Affine>().is_err());
        assert!("".parse::<Affine>().is_err());
    }

    #[test]
    fn empty_expression_is_zero() {
        assert!(net_lowering(&FormalExpression::new(4)).is_zero());
    }

    #[test]
    fn catalog_loads() {
        let c = load_catalog(CATALOG_JSON).unwrap();
        assert_eq!(c.entries.len(), 10);
        for e in &c.entries {
            e.expression().unwrap();
            e.claimed_drop().unwrap();
        }
    }
}
