//! Root data of the hermitian symmetric pairs in Bourbaki coordinates.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{frac, q, to_i64, Vector, Q};

pub type Root = Vector;
pub type Weight = Vector;

/// Labels `n_k = <Λ0, μ_k>` keyed by the compact simple root index `k`.
/// Missing keys mean zero.
pub type Labels = BTreeMap<usize, u64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// su(p,q), type A_{p+q-1}.
    Su { p: usize, q: usize },
    /// sp(n,R), type C_n.
    Sp { n: usize },
    /// so*(2n), type D_n.
    SoStar { n: usize },
    /// so(2n-1,2), type B_n.
    SoOdd { n: usize },
    /// so(2n-2,2), type D_n.
    SoEven { n: usize },
    E6,
    E7,
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidParameters {
                family: self.to_string(),
                reason: reason.into(),
            })
        };
        match *self {
            Family::Su { p, q } if p < 1 || q < 1 => bad("p and q must be at least 1"),
            Family::Sp { n } | Family::SoStar { n } if n < 2 => bad("n must be at least 2"),
            Family::SoOdd { n } if n < 1 => bad("n must be at least 1"),
            Family::SoEven { n } if n < 3 => bad("n must be at least 3"),
            _ => Ok(()),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Family::Su { .. } => "su",
            Family::Sp { .. } => "sp",
            Family::SoStar { .. } => "sostar",
            Family::SoOdd { .. } => "soodd",
            Family::SoEven { .. } => "soeven",
            Family::E6 => "e6",
            Family::E7 => "e7",
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        !matches!(self, Family::Sp { .. } | Family::SoOdd { .. })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Su { p, q } => write!(f, "su({p},{q})"),
            Family::Sp { n } => write!(f, "sp({n},R)"),
            Family::SoStar { n } => write!(f, "so*({})", 2 * n),
            Family::SoOdd { n } => write!(f, "so({},2)", 2 * n as i64 - 1),
            Family::SoEven { n } => write!(f, "so({},2)", 2 * n as i64 - 2),
            Family::E6 => write!(f, "e6"),
            Family::E7 => write!(f, "e7"),
        }
    }
}

/// A simple root: the noncompact `β` or a compact `μ_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Simple {
    Beta,
    Mu(usize),
}

impl Simple {
    pub fn ascii(&self) -> String {
        match self {
            Simple::Beta => "beta".into(),
            Simple::Mu(k) => format!("mu{k}"),
        }
    }
}

impl fmt::Display for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Simple::Beta => write!(f, "β"),
            Simple::Mu(k) => write!(f, "μ{k}"),
        }
    }
}

impl FromStr for Simple {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s == "beta" || s == "β" {
            return Ok(Simple::Beta);
        }
        let rest = s
            .strip_prefix("mu")
            .or_else(|| s.strip_prefix('μ'))
            .ok_or_else(|| format!("expected `beta` or `mu<k>`, got `{s}`"))?;
        rest.parse()
            .map(Simple::Mu)
            .map_err(|_| format!("bad simple root index in `{s}`"))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    /// Ambient dimension.
    pub dim: usize,
    pub beta: Root,
    /// Compact simple roots `(k, μ_k)` in increasing `k`.
    pub compact_simple: Vec<(usize, Root)>,
    /// Positive roots sorted by (height, coordinates).
    pub positive: Vec<Root>,
    /// Δ_n⁺ sorted by (height, coordinates).
    pub noncompact: Vec<Root>,
    pub compact_positive: Vec<Root>,
    pub gamma_r: Root,
    /// Half the sum of positive roots.
    pub rho: Weight,
    pub epsilon: Weight,
    simples: Vec<Root>,
    solver: Solver,
    nc_index: HashMap<Root, usize>,
    roots: HashSet<Root>,
}

/// `<a, b> = 2(a,b)/(b,b)`.
pub fn pairing(a: &Weight, b: &Root) -> Result<Q> {
    if b.is_zero() {
        return Err(Error::DegenerateRoot);
    }
    Ok(pair(a, b))
}

pub(crate) fn pair(a: &Weight, b: &Root) -> Q {
    q(2) * a.dot(b) / b.norm2()
}

/// `σ_α(w) = w - <w,α> α`.
pub fn weyl_reflect(w: &Weight, alpha: &Root) -> Weight {
    w - &alpha.scale(&pair(w, alpha))
}

fn e(dim: usize, i: usize) -> Vector {
    Vector::unit(dim, i - 1)
}

fn classical_roots(n: usize, long: bool, short: bool) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push(&e(n, i) - &e(n, j));
            }
            if long && i < j {
                let v = &e(n, i) + &e(n, j);
                out.push(-&v);
                out.push(v);
            }
        }
        if short {
            out.push(e(n, i));
            out.push(-e(n, i));
        }
    }
    out
}

fn e8_roots() -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            for si in [1, -1] {
                for sj in [1, -1] {
                    let mut v = Vector::zero(8);
                    v.0[i] = q(si);
                    v.0[j] = q(sj);
                    out.push(v);
                }
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            out.push(Vector(
                (0..8)
                    .map(|k| if mask >> k & 1 == 1 { frac(-1, 2) } else { frac(1, 2) })
                    .collect(),
            ));
        }
    }
    out
}

/// Bourbaki simple roots α1..α7 of E7 inside R^8 (E6 uses α1..α6).
fn e_simple(k: usize) -> Root {
    let h = frac(1, 2);
    let mut v = Vector::zero(8);
    match k {
        1 => {
            for x in v.0.iter_mut() {
                *x = -h.clone();
            }
            v.0[0] = h.clone();
            v.0[7] = h;
        }
        2 => {
            v.0[0] = q(1);
            v.0[1] = q(1);
        }
        _ => {
            v.0[k - 2] = q(1);
            v.0[k - 3] = q(-1);
        }
    }
    v
}

impl RootSystem {
    pub fn build(family: Family) -> Result<RootSystem> {
        family.validate()?;
        let (roots, beta, compact) = match family {
            Family::Su { p, q: qq } => {
                let n = p + qq;
                let s = |k: usize| &e(n, k) - &e(n, k + 1);
                let mut mu = Vec::new();
                for k in 1..qq {
                    mu.push((k, s(p + k)));
                }
                for m in 0..p.saturating_sub(1) {
                    mu.push((qq + m, s(p - 1 - m)));
                }
                (classical_roots(n, false, false), s(p), mu)
            }
            Family::Sp { n } => {
                let mut roots = classical_roots(n, true, false);
                for i in 1..=n {
                    roots.push(e(n, i).scale(&q(2)));
                    roots.push(e(n, i).scale(&q(-2)));
                }
                let mu = (1..n).map(|k| (k, &e(n, k) - &e(n, k + 1))).collect();
                (roots, e(n, n).scale(&q(2)), mu)
            }
            Family::SoStar { n } => {
                let mu = (1..n).map(|k| (k, &e(n, k) - &e(n, k + 1))).collect();
                (classical_roots(n, true, false), &e(n, n - 1) + &e(n, n), mu)
            }
            Family::SoOdd { n } => {
                if n == 1 {
                    (classical_roots(1, false, true), e(1, 1), Vec::new())
                } else {
                    let mut mu: Vec<(usize, Root)> =
                        (1..n - 1).map(|k| (k, &e(n, k + 1) - &e(n, k + 2))).collect();
                    mu.push((n - 1, e(n, n)));
                    (classical_roots(n, true, true), &e(n, 1) - &e(n, 2), mu)
                }
            }
            Family::SoEven { n } => {
                let mut mu: Vec<(usize, Root)> =
                    (1..n - 1).map(|k| (k, &e(n, k + 1) - &e(n, k + 2))).collect();
                mu.push((n - 1, &e(n, n - 1) + &e(n, n)));
                (classical_roots(n, true, false), &e(n, 1) - &e(n, 2), mu)
            }
            Family::E6 | Family::E7 => {
                let (beta_k, mu_ks): (usize, Vec<usize>) = if family == Family::E6 {
                    (1, (2..=6).collect())
                } else {
                    (7, (1..=6).collect())
                };
                let mut simples = vec![e_simple(beta_k)];
                simples.extend(mu_ks.iter().map(|&k| e_simple(k)));
                let solver = Solver::new(&simples)?;
                let roots = e8_roots()
                    .into_iter()
                    .filter(|v| {
                        let c = solver.solve(v);
                        c.iter().all(|x| x.is_integer()) && expand(&simples, &c, 8) == *v
                    })
                    .collect();
                let mu = mu_ks.iter().map(|&k| (k, e_simple(k))).collect();
                (roots, e_simple(beta_k), mu)
            }
        };
        Self::finish(family, roots, beta, compact)
    }

    fn finish(
        family: Family,
        roots: Vec<Root>,
        beta: Root,
        compact_simple: Vec<(usize, Root)>,
    ) -> Result<RootSystem> {
        let dim = beta.dim();
        let mut simples = vec![beta.clone()];
        simples.extend(compact_simple.iter().map(|(_, r)| r.clone()));
        let rank = simples.len();
        let solver = Solver::new(&simples)?;

        // Coefficients scaled by the solver's denominator, one solve per root.
        let scaled: Vec<(Vec<i128>, &Root)> = roots
            .iter()
            .map(|r| solver.solve_scaled(r).map(|c| (c, r)))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Invariant(format!("{family}: roots are not half-integral")))?;
        let unit = solver.scale();
        let mut positive: Vec<(i128, &Root, i128)> = scaled
            .iter()
            .filter(|(c, _)| c.iter().all(|x| *x >= 0))
            .map(|(c, r)| (c.iter().sum(), *r, c[0]))
            .collect();
        if positive.len() * 2 != roots.len() {
            return Err(Error::Invariant(format!(
                "{family}: simple roots do not split the root system"
            )));
        }
        positive.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

        let mut noncompact = Vec::new();
        let mut compact_positive = Vec::new();
        for (_, r, c0) in &positive {
            if *c0 == 0 {
                compact_positive.push((*r).clone());
            } else if *c0 == unit {
                noncompact.push((*r).clone());
            } else {
                return Err(Error::Invariant(format!(
                    "{family}: beta appears with coefficient {} in {r}",
                    Q::new((*c0).into(), unit.into())
                )));
            }
        }
        let top = positive.iter().filter(|p| p.2 == unit).map(|p| p.0).max().expect("beta is noncompact");
        let tops: Vec<&Root> = positive.iter().filter(|p| p.2 == unit && p.0 == top).map(|p| p.1).collect();
        if tops.len() != 1 {
            return Err(Error::Invariant(format!("{family}: highest root not unique")));
        }
        let gamma_r = tops[0].clone();
        let positive: Vec<Root> = positive.into_iter().map(|p| p.1.clone()).collect();
        let rho = Vector::sum(dim, &positive).scale(&frac(1, 2));

        // ε in the span of the simple roots with (ε, μ) = 0 is a multiple of
        // the Gram-inverse column of β; γ_r has β-coefficient 1, which fixes
        // <ε, γ_r> = 1.
        let t = gamma_r.norm2() / q(2);
        let c: Vec<Q> = solver.inv.iter().map(|row| &row[0] * &t).collect();
        let epsilon = expand(&simples, &c, dim);

        let nc_index = noncompact
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let rs = RootSystem {
            family,
            rank,
            dim,
            beta,
            compact_simple,
            positive,
            noncompact,
            compact_positive,
            gamma_r,
            rho,
            epsilon,
            simples,
            solver,
            nc_index,
            roots: roots.into_iter().collect(),
        };
        rs.check_invariants()?;
        Ok(rs)
    }

    fn check_invariants(&self) -> Result<()> {
        for (k, m) in &self.compact_simple {
            if !pair(&self.epsilon, m).is_zero() {
                return Err(Error::Invariant(format!("<ε, μ{k}> ≠ 0")));
            }
        }
        if !pair(&self.epsilon, &self.gamma_r).is_one() {
            return Err(Error::Invariant("<ε, γ_r> ≠ 1".into()));
        }
        Ok(())
    }

    /// `[β, μ_k...]` with their labels.
    pub fn simple_roots(&self) -> Vec<(Simple, &Root)> {
        let mut out = vec![(Simple::Beta, &self.beta)];
        out.extend(self.compact_simple.iter().map(|(k, r)| (Simple::Mu(*k), r)));
        out
    }

    pub fn simple_root(&self, s: Simple) -> Option<&Root> {
        match s {
            Simple::Beta => Some(&self.beta),
            Simple::Mu(k) => self.mu(k),
        }
    }

    pub fn mu(&self, k: usize) -> Option<&Root> {
        self.compact_simple.iter().find(|(j, _)| *j == k).map(|(_, r)| r)
    }

    pub fn compact_labels(&self) -> Vec<usize> {
        self.compact_simple.iter().map(|(k, _)| *k).collect()
    }

    /// Coefficients in the simple roots, `β` first then `μ_k` by increasing `k`.
    /// Only meaningful for vectors in their span.
    pub fn coefficients(&self, v: &Vector) -> Vec<Q> {
        self.solver.solve(v)
    }

    pub fn int_coefficients(&self, v: &Vector) -> Option<Vec<i64>> {
        self.coefficients(v).iter().map(to_i64).collect()
    }

    /// Number of simple roots in the expansion, with multiplicity.
    pub fn height(&self, v: &Vector) -> i64 {
        if let Some(c) = self.solver.solve_scaled(v) {
            let (h, r) = c.iter().sum::<i128>().div_rem(&self.solver.scale());
            if r == 0 {
                return h as i64;
            }
        }
        let h = self
            .coefficients(v)
            .into_iter()
            .fold(Q::zero(), |a, b| a + b);
        to_i64(&h).expect("height of a root-lattice vector")
    }

    /// `Σ c_s s` over simple roots.
    pub fn expand(&self, coeffs: &BTreeMap<Simple, Q>) -> Vector {
        let mut v = Vector::zero(self.dim);
        for (s, c) in coeffs {
            if let Some(r) = self.simple_root(*s) {
                v += &r.scale(c);
            }
        }
        v
    }

    /// `a - b` is a non-negative combination of simple roots.
    pub fn geq(&self, a: &Vector, b: &Vector) -> bool {
        self.coefficients(&(a - b)).iter().all(|c| !c.is_negative())
    }

    pub fn is_root(&self, v: &Vector) -> bool {
        self.roots.contains(v)
    }

    pub fn noncompact_index(&self, v: &Vector) -> Option<usize> {
        self.nc_index.get(v).copied()
    }

    pub fn is_long(&self, r: &Root) -> bool {
        let max = self.positive.iter().map(Vector::norm2).max().expect("nonempty");
        r.norm2() == max
    }

    /// Simple-root expansion such as `β+2μ1+μ3`.
    pub fn name(&self, v: &Vector) -> String {
        let c = self.coefficients(v);
        let mut s = String::new();
        for ((label, _), x) in self.simple_roots().iter().zip(&c) {
            if x.is_zero() {
                continue;
            }
            let sign = if x.is_negative() { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = x.abs();
            let m = if mag.is_one() { String::new() } else { crate::rational::fmt_q(&mag) };
            s.push_str(&format!("{sign}{m}{label}"));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    pub fn check_labels(&self, labels: &Labels) -> Result<()> {
        match labels.keys().find(|k| self.mu(**k).is_none()) {
            Some(&k) => Err(Error::UnknownLabel(k)),
            None => Ok(()),
        }
    }

    /// Λ0 with `<Λ0, μ_k> = n_k` and `<Λ0, γ_r> = 0`, in the span of the
    /// simple roots (for su this is the trace-zero normalization).
    pub fn resolve_weight(&self, labels: &Labels) -> Result<Weight> {
        self.check_labels(labels)?;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (k, m) in &self.compact_simple {
            rows.push(self.simples.iter().map(|s| pair(s, m)).collect());
            rhs.push(q(*labels.get(k).unwrap_or(&0) as i64));
        }
        rows.push(self.simples.iter().map(|s| pair(s, &self.gamma_r)).collect());
        rhs.push(Q::zero());
        let c = linalg::solve(&rows, &rhs)
            .ok_or_else(|| Error::Invariant("singular system for Λ0".into()))?;
        Ok(expand(&self.simples, &c, self.dim))
    }
}

/// Coordinates in a basis of simple roots. Vectors with half-integral
/// coordinates, which covers every root and weight lattice used here, go
/// through an integer path; anything else through the rational inverse.
#[derive(Clone, Debug)]
struct Solver {
    simples: Vec<Root>,
    inv: Matrix,
    /// `2 s` for each simple root `s`.
    simples2: Vec<Vec<i128>>,
    /// `inv = num / den`.
    num: Vec<Vec<i128>>,
    den: i128,
}

/// `2x` as an integer, when `x` is half-integral.
fn twice_int(x: &Q) -> Option<i128> {
    let n = x.numer().to_i128()?;
    match x.denom().to_i128()? {
        1 => n.checked_mul(2),
        2 => Some(n),
        _ => None,
    }
}

/// `(adj, det)` with `a · adj = det · I`, by fraction-free Gauss-Jordan.
/// `None` on overflow or a singular matrix.
fn int_inverse(a: &[Vec<i128>]) -> Option<(Vec<Vec<i128>>, i128)> {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| i128::from(i == j)));
            r
        })
        .collect();
    let mut prev = 1i128;
    for k in 0..n {
        let p = (k..n).find(|&r| m[r][k] != 0)?;
        m.swap(k, p);
        for i in (0..n).filter(|&i| i != k) {
            for j in (0..2 * n).filter(|&j| j != k) {
                let x = m[k][k].checked_mul(m[i][j])?.checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = x / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    let det = m[0][0];
    let adj: Vec<Vec<i128>> = m.iter().map(|r| r[n..].to_vec()).collect();
    // exactness check: a · adj = det · I
    for (i, row) in a.iter().enumerate() {
        for j in 0..n {
            let mut s = 0i128;
            for (x, r) in row.iter().zip(&adj) {
                s = s.checked_add(x.checked_mul(r[j])?)?;
            }
            if s != if i == j { det } else { 0 } {
                return None;
            }
        }
    }
    Some((adj, det))
}

impl Solver {
    fn new(simples: &[Root]) -> Result<Solver> {
        let simples2: Vec<Vec<i128>> = simples
            .iter()
            .map(|s| s.0.iter().map(twice_int).collect::<Option<_>>())
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Invariant("simple roots are not half-integral".into()))?;
        // 4 (a, b)
        let g4: Vec<Vec<i128>> = simples2
            .iter()
            .map(|a| simples2.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
            .collect();
        // Gram⁻¹ = 4 adj(g4) / det(g4)
        let (num, den) = match int_inverse(&g4) {
            Some((adj, det)) => {
                let adj: Vec<Vec<i128>> = adj.iter().map(|r| r.iter().map(|x| 4 * x).collect()).collect();
                let g = adj.iter().flatten().fold(det, |a, &b| a.gcd(&b));
                let g = if det < 0 { -g.abs() } else { g.abs() };
                (adj.iter().map(|r| r.iter().map(|x| x / g).collect()).collect::<Vec<Vec<i128>>>(), det / g)
            }
            None => return Err(Error::Invariant("Gram matrix of the simple roots is singular or too large".into())),
        };
        let inv = num
            .iter()
            .map(|r| r.iter().map(|x| Q::new(BigInt::from(*x), BigInt::from(den))).collect())
            .collect();
        Ok(Solver {
            simples: simples.to_vec(),
            inv,
            simples2,
            num,
            den,
        })
    }

    /// Denominator of [`Solver::solve_scaled`].
    fn scale(&self) -> i128 {
        4 * self.den
    }

    /// Coefficients times `4 den`, when `2v` is integral.
    fn solve_scaled(&self, v: &Vector) -> Option<Vec<i128>> {
        let mut v2 = Vec::new();
        for (i, x) in v.0.iter().enumerate() {
            if !x.is_zero() {
                v2.push((i, twice_int(x)?));
            }
        }
        // 4 (v, s_k), mostly zero for roots
        let d4: Vec<(usize, i128)> = self
            .simples2
            .iter()
            .map(|s| v2.iter().map(|&(i, b)| s[i] * b).sum())
            .enumerate()
            .filter(|&(_, x): &(usize, i128)| x != 0)
            .collect();
        Some(
            self.num
                .iter()
                .map(|row| d4.iter().map(|&(k, x)| row[k] * x).sum())
                .collect(),
        )
    }

    fn solve(&self, v: &Vector) -> Vec<Q> {
        match self.solve_scaled(v) {
            Some(c) => c
                .into_iter()
                .map(|n| Q::new(BigInt::from(n), BigInt::from(self.scale())))
                .collect(),
            None => {
                let d: Vec<Q> = self.simples.iter().map(|s| v.dot(s)).collect();
                linalg::mat_vec(&self.inv, &d)
            }
        }
    }
}

fn expand(simples: &[Root], c: &[Q], dim: usize) -> Vector {
    let mut v = Vector::zero(dim);
    for (s, x) in simples.iter().zip(c) {
        v += &s.scale(x);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su58_counts() {
        let rs = RootSystem::build(Family::Su { p: 5, q: 8 }).unwrap();
        assert_eq!(rs.rank, 12);
        assert_eq!(rs.noncompact.len(), 40);
        assert_eq!(rs.height(&rs.gamma_r), 12);
        assert_eq!(rs.mu(8).unwrap(), &(&e(13, 4) - &e(13, 5)));
        assert_eq!(rs.mu(11).unwrap(), &(&e(13, 1) - &e(13, 2)));
    }

    #[test]
    fn simple_parse() {
        assert_eq!("mu5".parse::<Simple>(), Ok(Simple::Mu(5)));
        assert_eq!("β".parse::<Simple>(), Ok(Simple::Beta));
        assert!("nu".parse::<Simple>().is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(RootSystem::build(Family::Su { p: 0, q: 3 }).is_err());
        assert!(RootSystem::build(Family::Sp { n: 1 }).is_err());
        assert!(RootSystem::build(Family::SoEven { n: 2 }).is_err());
    }

    #[test]
    fn degenerate_pairing() {
        let z = Vector::zero(2);
        assert_eq!(pairing(&z, &z), Err(Error::DegenerateRoot));
    }
}
