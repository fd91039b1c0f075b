//! Brute-force contravariant form on weight spaces of Verma modules for the
//! smallest pairs su(1,1), su(2,1), su(2,2) and sp(2,R).
//!
//! Nothing here uses the classifier. Structure constants come from explicit
//! matrices, the module is handled through PBW monomials, and the form is
//! computed by the usual recursion `<F_a x, y> = s_a <x, E_a y>` where
//! `s_a = -1` on noncompact roots (the sign of the real form).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::classifier::{classify, is_k1_dominant, Verdict};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{fmt_q, q, Q};
use crate::root_system::{Family, Labels, Root, RootSystem, Weight};
use crate::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SmallFamily {
    Su11,
    Su21,
    Su22,
    Sp2,
}

impl SmallFamily {
    pub const ALL: [SmallFamily; 4] = [
        SmallFamily::Su11,
        SmallFamily::Su21,
        SmallFamily::Su22,
        SmallFamily::Sp2,
    ];

    pub fn family(&self) -> Family {
        match self {
            SmallFamily::Su11 => Family::Su { p: 1, q: 1 },
            SmallFamily::Su21 => Family::Su { p: 2, q: 1 },
            SmallFamily::Su22 => Family::Su { p: 2, q: 2 },
            SmallFamily::Sp2 => Family::Sp { n: 2 },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SmallFamily::Su11 => "su11",
            SmallFamily::Su21 => "su21",
            SmallFamily::Su22 => "su22",
            SmallFamily::Sp2 => "sp2",
        }
    }
}

impl fmt::Display for SmallFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SmallFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SmallFamily::ALL
            .into_iter()
            .find(|f| f.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownFormat(s.to_string()))
    }
}

type Sparse = BTreeMap<(usize, usize), Q>;

fn mat_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut c = Sparse::new();
    for ((i, k), x) in a {
        for ((k2, j), y) in b.range((*k, 0)..(*k + 1, 0)) {
            debug_assert_eq!(k, k2);
            *c.entry((*i, *j)).or_insert_with(Q::zero) += x * y;
        }
    }
    c.retain(|_, v| !v.is_zero());
    c
}

fn commutator(a: &Sparse, b: &Sparse) -> Sparse {
    let mut c = mat_mul(a, b);
    for (k, v) in mat_mul(b, a) {
        *c.entry(k).or_insert_with(Q::zero) -= v;
    }
    c.retain(|_, v| !v.is_zero());
    c
}

fn sparse(entries: &[(usize, usize, i64)]) -> Sparse {
    entries.iter().map(|&(i, j, v)| ((i, j), q(v))).collect()
}

/// Root vectors of the defining representation, keyed by root.
fn realization(kind: SmallFamily, dim: usize) -> Vec<(Root, Sparse)> {
    let e = |i: usize| Vector::unit(dim, i);
    let mut out = Vec::new();
    match kind {
        SmallFamily::Sp2 => {
            let n = dim;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        out.push((&e(i) - &e(j), sparse(&[(i, j, 1), (n + j, n + i, -1)])));
                    }
                    if i < j {
                        let s = &e(i) + &e(j);
                        out.push((-&s, sparse(&[(n + j, i, 1), (n + i, j, 1)])));
                        out.push((s, sparse(&[(i, n + j, 1), (j, n + i, 1)])));
                    }
                }
                out.push((e(i).scale(&q(2)), sparse(&[(i, n + i, 1)])));
                out.push((e(i).scale(&q(-2)), sparse(&[(n + i, i, 1)])));
            }
        }
        _ => {
            for i in 0..dim {
                for j in 0..dim {
                    if i != j {
                        out.push((&e(i) - &e(j), sparse(&[(i, j, 1)])));
                    }
                }
            }
        }
    }
    out
}

/// The Cartan element with coordinates `h` in the realization.
fn cartan_matrix(kind: SmallFamily, h: &Vector) -> Sparse {
    let n = h.dim();
    let mut m = Sparse::new();
    for (i, x) in h.0.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        m.insert((i, i), x.clone());
        if kind == SmallFamily::Sp2 {
            m.insert((n + i, n + i), -x);
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Bracket {
    Cartan(Vector),
    Root(usize, Q),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Basis {
    Root(usize),
    Cartan(usize),
}

/// Structure constants of a small algebra in a Chevalley-type basis read
/// off from matrices.
#[derive(Clone, Debug)]
pub struct SmallAlgebra {
    pub kind: SmallFamily,
    pub rs: RootSystem,
    /// Positive roots in PBW order, sorted by (height, coordinates).
    pub pbw: Vec<Root>,
    /// `pbw` followed by their negatives.
    roots: Vec<Root>,
    root_index: HashMap<Root, usize>,
    sign: Vec<Q>,
    brackets: HashMap<(usize, usize), Bracket>,
}

impl SmallAlgebra {
    pub fn new(kind: SmallFamily) -> Result<SmallAlgebra> {
        let rs = RootSystem::build(kind.family())?;
        let pbw = rs.positive.clone();
        let mut roots = pbw.clone();
        roots.extend(pbw.iter().map(|r| -r));
        let root_index: HashMap<Root, usize> =
            roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();

        let mats = realization(kind, rs.dim);
        if mats.len() != roots.len() || mats.iter().any(|(r, _)| !root_index.contains_key(r)) {
            return Err(Error::Invariant(format!("{kind}: realization does not match the roots")));
        }
        let mut x: Vec<Sparse> = vec![Sparse::new(); roots.len()];
        for (r, m) in mats {
            x[root_index[&r]] = m;
        }

        // Cartan action [H_i, X_a] = a_i X_a.
        for (a, xa) in roots.iter().zip(&x) {
            for i in 0..rs.dim {
                let h = cartan_matrix(kind, &Vector::unit(rs.dim, i));
                let lhs = commutator(&h, xa);
                let rhs: Sparse = xa
                    .iter()
                    .map(|(k, v)| (*k, v * &a.0[i]))
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                if lhs != rhs {
                    return Err(Error::Invariant(format!("{kind}: {a} is not a weight of ad H")));
                }
            }
        }

        let mut brackets = HashMap::new();
        for (ia, a) in roots.iter().enumerate() {
            for (ib, b) in roots.iter().enumerate() {
                let c = commutator(&x[ia], &x[ib]);
                if c.is_empty() {
                    continue;
                }
                let ab = a + b;
                let entry = if ab.is_zero() {
                    let h = Vector((0..rs.dim).map(|i| c.get(&(i, i)).cloned().unwrap_or_default()).collect());
                    if cartan_matrix(kind, &h) != c {
                        return Err(Error::Invariant(format!("{kind}: [X_{a}, X_{b}] is not diagonal")));
                    }
                    Bracket::Cartan(h)
                } else {
                    let ic = *root_index.get(&ab).ok_or_else(|| {
                        Error::Invariant(format!("{kind}: [X_{a}, X_{b}] != 0 but {ab} is not a root"))
                    })?;
                    let (k, v) = x[ic].iter().next().expect("nonzero root vector");
                    let coef = c.get(k).cloned().unwrap_or_default() / v;
                    let scaled: Sparse = x[ic].iter().map(|(k, v)| (*k, v * &coef)).collect();
                    if scaled != c {
                        return Err(Error::Invariant(format!("{kind}: [X_{a}, X_{b}] not proportional to X_{ab}")));
                    }
                    Bracket::Root(ic, coef)
                };
                brackets.insert((ia, ib), entry);
            }
        }

        let sign = pbw
            .iter()
            .map(|a| {
                if rs.noncompact_index(a).is_some() {
                    q(-1)
                } else {
                    q(1)
                }
            })
            .collect();
        let alg = SmallAlgebra {
            kind,
            rs,
            pbw,
            roots,
            root_index,
            sign,
            brackets,
        };
        alg.check_coroots()?;
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// `[X_a, X_-a]` is the coroot of `a`, so `Λ([X_a, X_-a]) = <Λ, a>`.
    fn check_coroots(&self) -> Result<()> {
        let p = self.pbw.len();
        for (i, a) in self.pbw.iter().enumerate() {
            let coroot = a.scale(&(q(2) / a.norm2()));
            if self.brackets.get(&(i, i + p)) != Some(&Bracket::Cartan(coroot)) {
                return Err(Error::Invariant(format!("{}: [X_{a}, X_-{a}] is not the coroot", self.kind)));
            }
        }
        Ok(())
    }

    fn bracket(&self, x: Basis, y: Basis) -> BTreeMap<Basis, Q> {
        let mut out = BTreeMap::new();
        match (x, y) {
            (Basis::Root(a), Basis::Root(b)) => match self.brackets.get(&(a, b)) {
                Some(Bracket::Cartan(h)) => {
                    for (i, v) in h.0.iter().enumerate() {
                        if !v.is_zero() {
                            out.insert(Basis::Cartan(i), v.clone());
                        }
                    }
                }
                Some(Bracket::Root(c, coef)) => {
                    out.insert(Basis::Root(*c), coef.clone());
                }
                None => {}
            },
            (Basis::Cartan(i), Basis::Root(a)) => {
                let v = self.roots[a].0[i].clone();
                if !v.is_zero() {
                    out.insert(Basis::Root(a), v);
                }
            }
            (Basis::Root(a), Basis::Cartan(i)) => {
                let v = -&self.roots[a].0[i];
                if !v.is_zero() {
                    out.insert(Basis::Root(a), v);
                }
            }
            (Basis::Cartan(_), Basis::Cartan(_)) => {}
        }
        out
    }

    fn check_jacobi(&self) -> Result<()> {
        let basis: Vec<Basis> = (0..self.roots.len())
            .map(Basis::Root)
            .chain((0..self.rs.dim).map(Basis::Cartan))
            .collect();
        let br_lin = |x: Basis, v: &BTreeMap<Basis, Q>| {
            let mut out: BTreeMap<Basis, Q> = BTreeMap::new();
            for (y, c) in v {
                for (z, d) in self.bracket(x, *y) {
                    *out.entry(z).or_insert_with(Q::zero) += c * d;
                }
            }
            out
        };
        for &x in &basis {
            for &y in &basis {
                let xy = self.bracket(x, y);
                let mut yx = self.bracket(y, x);
                for v in yx.values_mut() {
                    *v = -&*v;
                }
                if xy != yx {
                    return Err(Error::Invariant(format!("{}: bracket is not antisymmetric", self.kind)));
                }
                for &z in &basis {
                    let mut total = br_lin(x, &self.bracket(y, z));
                    for (k, v) in br_lin(y, &self.bracket(z, x)).into_iter().chain(br_lin(z, &xy)) {
                        *total.entry(k).or_insert_with(Q::zero) += v;
                    }
                    if total.values().any(|v| !v.is_zero()) {
                        return Err(Error::Invariant(format!("{}: Jacobi identity fails", self.kind)));
                    }
                }
            }
        }
        Ok(())
    }

    fn pbw_position(&self, positive: &Root) -> Option<usize> {
        self.root_index.get(positive).copied().filter(|&i| i < self.pbw.len())
    }

    /// `F_{a1}^{k1} F_{a2}^{k2} ...` in PBW order.
    pub fn monomial_name(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                let base = format!("F[{}]", self.rs.name(&self.pbw[i]));
                if k == 1 {
                    base
                } else {
                    format!("{base}^{k}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }

    /// Kostant partitions of `omega` as exponent vectors over `pbw`.
    pub fn pbw_basis(&self, omega: &Weight) -> Vec<Mono> {
        let Some(target) = self.rs.int_coefficients(omega) else {
            return Vec::new();
        };
        let coeffs: Vec<Vec<i64>> = self
            .pbw
            .iter()
            .map(|a| self.rs.int_coefficients(a).expect("integral root"))
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.pbw.len());
        partitions(&coeffs, 0, target, &mut cur, &mut out);
        out
    }

    /// The β-coefficient of a weight, i.e. its degree in the noncompact
    /// generators.
    pub fn degree(&self, omega: &Weight) -> i64 {
        self.rs.int_coefficients(omega).map_or(-1, |c| c[0])
    }
}

fn partitions(coeffs: &[Vec<i64>], i: usize, rem: Vec<i64>, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
    if rem.iter().all(|&c| c == 0) {
        let mut m = cur.clone();
        m.resize(coeffs.len(), 0);
        out.push(m);
        return;
    }
    if i == coeffs.len() || rem.iter().any(|&c| c < 0) {
        return;
    }
    let mut r = rem;
    let mut k = 0;
    while r.iter().all(|&c| c >= 0) {
        cur.push(k);
        partitions(coeffs, i + 1, r.clone(), cur, out);
        cur.pop();
        k += 1;
        for (x, c) in r.iter_mut().zip(&coeffs[i]) {
            *x -= c;
        }
    }
}

/// Exponents over the PBW-ordered positive roots.
pub type Mono = Vec<u32>;
type Elem = BTreeMap<Mono, Q>;

fn add_scaled(acc: &mut Elem, v: &Elem, c: &Q) {
    for (k, x) in v {
        let e = acc.entry(k.clone()).or_insert_with(Q::zero);
        *e += x * c;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

#[derive(Clone, Debug)]
pub struct GramBlock {
    pub basis: Vec<Mono>,
    pub entries: Matrix,
}

/// `M(Λ)` for `Λ = Λ0 + λε`, with memoized PBW rewriting.
pub struct Verma<'a> {
    alg: &'a SmallAlgebra,
    pub highest: Weight,
    fcache: HashMap<(usize, Mono), Elem>,
    ecache: HashMap<(usize, Mono), Elem>,
    memo: HashMap<Vec<i64>, Rc<GramBlock>>,
}

impl<'a> Verma<'a> {
    pub fn new(alg: &'a SmallAlgebra, labels: &Labels, lambda: &Q) -> Result<Verma<'a>> {
        let l0 = alg.rs.resolve_weight(labels)?;
        Ok(Verma::with_weight(alg, &l0 + &alg.rs.epsilon.scale(lambda)))
    }

    pub fn with_weight(alg: &'a SmallAlgebra, highest: Weight) -> Verma<'a> {
        Verma {
            alg,
            highest,
            fcache: HashMap::new(),
            ecache: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    fn lowered(&self, m: &[u32]) -> Weight {
        let mut w = Vector::zero(self.alg.rs.dim);
        for (a, &k) in self.alg.pbw.iter().zip(m) {
            if k > 0 {
                w += &a.scale(&q(k as i64));
            }
        }
        w
    }

    /// `F_c · m` rewritten in PBW order.
    pub fn lmul_f(&mut self, c: usize, m: &Mono) -> Elem {
        let key = (c, m.clone());
        if let Some(v) = self.fcache.get(&key) {
            return v.clone();
        }
        let res = match m.iter().position(|&k| k > 0) {
            Some(d) if c > d => {
                let mut rest = m.clone();
                rest[d] -= 1;
                let mut res = Elem::new();
                for (k, v) in self.lmul_f(c, &rest) {
                    let t = self.lmul_f(d, &k);
                    add_scaled(&mut res, &t, &v);
                }
                // F_c F_d = F_d F_c + [F_c, F_d]
                let p = self.alg.pbw.len();
                if let Some(Bracket::Root(ab, coef)) = self.alg.brackets.get(&(c + p, d + p)).cloned() {
                    let t = self.lmul_f(ab - p, &rest);
                    add_scaled(&mut res, &t, &coef);
                }
                res
            }
            _ => {
                let mut mm = m.clone();
                mm[c] += 1;
                Elem::from([(mm, Q::one())])
            }
        };
        self.fcache.insert(key, res.clone());
        res
    }

    /// The root vector `X_{roots[r]}` applied to `m · v_Λ`.
    fn act(&mut self, r: usize, m: &Mono) -> Elem {
        let p = self.alg.pbw.len();
        if r >= p {
            return self.lmul_f(r - p, m);
        }
        let key = (r, m.clone());
        if let Some(v) = self.ecache.get(&key) {
            return v.clone();
        }
        let Some(first) = m.iter().position(|&k| k > 0) else {
            return Elem::new();
        };
        let mut rest = m.clone();
        rest[first] -= 1;
        let mut res = Elem::new();
        // E F_first rest = F_first E rest + [E, F_first] rest
        for (k, v) in self.act(r, &rest) {
            let t = self.lmul_f(first, &k);
            add_scaled(&mut res, &t, &v);
        }
        match self.alg.brackets.get(&(r, first + p)).cloned() {
            Some(Bracket::Cartan(h)) => {
                let val = (&self.highest - &self.lowered(&rest)).dot(&h);
                add_scaled(&mut res, &Elem::from([(rest, Q::one())]), &val);
            }
            Some(Bracket::Root(ab, coef)) => {
                let t = self.act(ab, &rest);
                add_scaled(&mut res, &t, &coef);
            }
            None => {}
        }
        self.ecache.insert(key, res.clone());
        res
    }

    /// Raising operator of a positive root applied to an element.
    pub fn raise(&mut self, positive: &Root, x: &Elem) -> Result<Elem> {
        let r = self
            .alg
            .pbw_position(positive)
            .ok_or_else(|| Error::Invariant(format!("{positive} is not a positive root")))?;
        let mut out = Elem::new();
        for (m, c) in x {
            let t = self.act(r, m);
            add_scaled(&mut out, &t, c);
        }
        Ok(out)
    }

    /// Gram matrix of the contravariant form on `M(Λ)_{Λ-ω}` in the PBW basis.
    pub fn gram(&mut self, omega: &Weight) -> Rc<GramBlock> {
        let key = self.alg.rs.int_coefficients(omega).unwrap_or_default();
        if let Some(g) = self.memo.get(&key) {
            return g.clone();
        }
        let basis = self.alg.pbw_basis(omega);
        let entries = if omega.is_zero() {
            vec![vec![Q::one()]]
        } else {
            let mut g = vec![vec![Q::zero(); basis.len()]; basis.len()];
            for (i, mi) in basis.iter().enumerate() {
                let c = mi.iter().position(|&k| k > 0).expect("nonzero monomial");
                let mut rest = mi.clone();
                rest[c] -= 1;
                let a = self.alg.pbw[c].clone();
                let sub = self.gram(&(omega - &a));
                let pos: HashMap<&Mono, usize> = sub.basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
                let ri = pos[&rest];
                for (j, mj) in basis.iter().enumerate() {
                    let mut s = Q::zero();
                    for (k, v) in self.act(c, mj) {
                        s += v * &sub.entries[ri][pos[&k]];
                    }
                    g[i][j] = s * &self.alg.sign[c];
                }
            }
            g
        };
        let block = Rc::new(GramBlock { basis, entries });
        self.memo.insert(key, block.clone());
        block
    }

    fn apply_word(&mut self, word: &[usize], x: Elem) -> Elem {
        let mut cur = x;
        for &i in word.iter().rev() {
            let mut next = Elem::new();
            for (m, c) in &cur {
                let t = self.lmul_f(i, m);
                add_scaled(&mut next, &t, c);
            }
            cur = next;
        }
        cur
    }

    /// RREF of the span of `F_J F_μ^{n_μ+1} v` at weight `ω`, which is the
    /// weight space of the submodule generated by the compact singular
    /// vectors. Rows are coordinates in `pbw_basis(ω)`.
    pub fn compact_submodule(&mut self, labels: &Labels, omega: &Weight) -> (Matrix, Vec<usize>) {
        let basis = self.alg.pbw_basis(omega);
        let pos: HashMap<&Mono, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        let simple: Vec<(usize, Root)> = self.alg.rs.compact_simple.clone();
        for (k, mu) in simple {
            let n = labels.get(&k).copied().unwrap_or(0) + 1;
            let rem = omega - &mu.scale(&q(n as i64));
            if !self.alg.rs.geq(&rem, &Vector::zero(rem.dim())) {
                continue;
            }
            let idx = self.alg.pbw_position(&mu).expect("compact simple root is positive");
            let zero: Mono = vec![0; self.alg.pbw.len()];
            let base = self.apply_word(&vec![idx; n as usize], Elem::from([(zero, Q::one())]));
            for j in self.alg.pbw_basis(&rem) {
                let word: Vec<usize> = j
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &k)| std::iter::repeat(i).take(k as usize))
                    .collect();
                let v = self.apply_word(&word, base.clone());
                let mut row = vec![Q::zero(); basis.len()];
                for (m, c) in v {
                    row[pos[&m]] += c;
                }
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return (Vec::new(), Vec::new());
        }
        linalg::row_reduce(&rows, basis.len())
    }

    /// The form restricted to PBW monomials off the pivots of the compact
    /// submodule, i.e. the form on the quotient by it.
    pub fn reduced_gram(&mut self, labels: &Labels, omega: &Weight) -> GramBlock {
        let g = self.gram(omega);
        let (_, piv) = self.compact_submodule(labels, omega);
        let keep: Vec<usize> = (0..g.basis.len()).filter(|i| !piv.contains(i)).collect();
        GramBlock {
            basis: keep.iter().map(|&i| g.basis[i].clone()).collect(),
            entries: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| g.entries[i][j].clone()).collect())
                .collect(),
        }
    }
}

fn check_degree(alg: &SmallAlgebra, omega: &Weight, bound: i64) -> Result<()> {
    let degree = alg.degree(omega);
    if degree > bound {
        return Err(Error::DegreeBound { degree, bound });
    }
    if degree < 0 {
        return Err(Error::Invariant(format!("{omega} is not a sum of positive roots")));
    }
    Ok(())
}

/// Gram matrix at `Λ0 + λε - ω`, refusing weights of degree above `bound`.
pub fn gram_matrix(
    alg: &SmallAlgebra,
    labels: &Labels,
    lambda: &Q,
    omega: &Weight,
    bound: i64,
) -> Result<GramBlock> {
    check_degree(alg, omega, bound)?;
    let mut v = Verma::new(alg, labels, lambda)?;
    Ok((*v.gram(omega)).clone())
}

/// Dense univariate polynomial in λ, lowest coefficient first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Poly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn constant(c: Q) -> Poly {
        Poly::new(vec![c])
    }

    /// `a + bλ`.
    pub fn linear(a: Q, b: Q) -> Poly {
        Poly::new(vec![a, b])
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Lagrange interpolation through distinct nodes.
    pub fn interpolate(points: &[(Q, Q)]) -> Poly {
        let mut out = Poly::default();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Poly::constant(yi.clone());
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    let d = Q::one() / (xi - xj);
                    basis = &basis * &Poly::linear(-xj * &d, d);
                }
            }
            out = &out + &basis;
        }
        out
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;

    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new(
            (0..n)
                .map(|i| self.0.get(i).cloned().unwrap_or_default() + o.0.get(i).cloned().unwrap_or_default())
                .collect(),
        )
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;

    fn mul(self, o: &Poly) -> Poly {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly::default();
        }
        let mut c = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Q::zero();
            let mag = if neg { -c } else { c.clone() };
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coef = if mag.is_one() && i > 0 { String::new() } else { fmt_q(&mag) };
            let var = match i {
                0 => String::new(),
                1 => "λ".into(),
                _ => format!("λ^{i}"),
            };
            write!(f, "{sign}{coef}{var}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PolyGram {
    pub basis: Vec<String>,
    #[serde(serialize_with = "poly_matrix")]
    pub entries: Vec<Vec<Poly>>,
    #[serde(serialize_with = "poly_str")]
    pub det: Poly,
}

fn poly_str<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn poly_matrix<S: serde::Serializer>(m: &[Vec<Poly>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(Poly::to_string).collect()).collect();
    rows.serialize(s)
}

/// The Gram matrix at `ω` as polynomials in λ, optionally on the quotient
/// by the compact submodule. Entries have degree at most `height(ω)` and
/// are recovered by interpolation, then checked at one extra node.
pub fn gram_polynomial(
    alg: &SmallAlgebra,
    labels: &Labels,
    omega: &Weight,
    bound: i64,
    reduced: bool,
) -> Result<PolyGram> {
    check_degree(alg, omega, bound)?;
    let ht = alg.rs.height(omega).max(0) as usize;
    let block = |v: &mut Verma| {
        if reduced {
            v.reduced_gram(labels, omega)
        } else {
            (*v.gram(omega)).clone()
        }
    };
    let sample = |x: &Q| -> Result<GramBlock> {
        let mut v = Verma::new(alg, labels, x)?;
        Ok(block(&mut v))
    };
    let n = sample(&Q::zero())?.basis.len();
    let det_deg = n * ht;
    let nodes: Vec<Q> = (0..=det_deg + 1).map(|i| q(i as i64)).collect();
    let blocks: Vec<GramBlock> = nodes.iter().map(sample).collect::<Result<_>>()?;
    let basis = blocks[0].basis.clone();

    let mut entries = vec![vec![Poly::default(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let pts: Vec<(Q, Q)> = (0..=ht).map(|t| (nodes[t].clone(), blocks[t].entries[i][j].clone())).collect();
            let p = Poly::interpolate(&pts);
            for (x, b) in nodes.iter().zip(&blocks) {
                if p.eval(x) != b.entries[i][j] {
                    return Err(Error::Invariant(format!("Gram entry of degree above {ht}")));
                }
            }
            entries[i][j] = p;
        }
    }
    let dets: Vec<(Q, Q)> = nodes.iter().zip(&blocks).map(|(x, b)| (x.clone(), linalg::det(&b.entries))).collect();
    let det = Poly::interpolate(&dets[..=det_deg]);
    if det.eval(&dets[det_deg + 1].0) != dets[det_deg + 1].1 {
        return Err(Error::Invariant("determinant degree bound".into()));
    }
    Ok(PolyGram {
        basis: basis.iter().map(|m| alg.monomial_name(m)).collect(),
        entries,
        det,
    })
}

/// `n! Π_{k<n} (k - λ)`, the norm of `F^n v` in su(1,1).
pub fn su11_closed_form(n: u32) -> Poly {
    let mut p = Poly::constant(Q::one());
    for k in 0..n {
        p = &p * &Poly::linear(q(k as i64 + 1) * q(k as i64), -q(k as i64 + 1));
    }
    p
}

/// Noncompact weights `ω` of degree `1..=max_degree` with `Λ0 - ω`
/// k1-dominant, by (degree, height, coordinates).
pub fn scan_weights(alg: &SmallAlgebra, labels: &Labels, max_degree: u32) -> Result<Vec<Weight>> {
    let l0 = alg.rs.resolve_weight(labels)?;
    let nc = &alg.rs.noncompact;
    let mut level: BTreeSet<Weight> = BTreeSet::from([Vector::zero(alg.rs.dim)]);
    let mut out = Vec::new();
    for _ in 0..max_degree {
        let next: BTreeSet<Weight> = level.iter().flat_map(|w| nc.iter().map(move |a| w + a)).collect();
        let mut keep: Vec<Weight> = next
            .iter()
            .filter(|w| is_k1_dominant(&alg.rs, &(&l0 - *w)))
            .cloned()
            .collect();
        keep.sort_by_key(|w| alg.rs.height(w));
        out.extend(keep);
        level = next;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightReport {
    pub omega: Weight,
    pub name: String,
    pub degree: i64,
    pub dim: usize,
    pub reduced_dim: usize,
    pub psd: bool,
    pub nullity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanResult {
    #[serde(with = "crate::rational::as_str")]
    pub lambda: Q,
    pub psd: bool,
    pub weights: Vec<WeightReport>,
    /// Kernel weights not above another kernel weight.
    pub minimal_kernel_weights: Vec<Weight>,
}

fn minimal(rs: &RootSystem, ws: &[Weight]) -> Vec<Weight> {
    ws.iter()
        .filter(|w| !ws.iter().any(|o| o != *w && rs.geq(w, o)))
        .cloned()
        .collect()
}

/// Positivity of the reduced form on every scanned weight, for each λ.
pub fn positivity_scan(alg: &SmallAlgebra, labels: &Labels, lambdas: &[Q], max_degree: u32) -> Result<Vec<ScanResult>> {
    let weights = scan_weights(alg, labels, max_degree)?;
    let mut out = Vec::new();
    for lambda in lambdas {
        let mut v = Verma::new(alg, labels, lambda)?;
        let mut reports = Vec::new();
        let mut kernel = Vec::new();
        for w in &weights {
            let full = v.gram(w).basis.len();
            let g = v.reduced_gram(labels, w);
            let p = linalg::psd(&g.entries);
            let nullity = g.entries.len() - linalg::rank(&g.entries);
            if nullity > 0 {
                kernel.push(w.clone());
            }
            log::debug!("{} λ={} ω={} psd={} nullity={}", alg.kind, fmt_q(lambda), w, p.psd, nullity);
            reports.push(WeightReport {
                omega: w.clone(),
                name: alg.rs.name(w),
                degree: alg.degree(w),
                dim: full,
                reduced_dim: g.entries.len(),
                psd: p.psd,
                nullity,
            });
        }
        out.push(ScanResult {
            lambda: lambda.clone(),
            psd: reports.iter().all(|r| r.psd),
            weights: reports,
            minimal_kernel_weights: minimal(&alg.rs, &kernel),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SvTerm {
    pub monomial: String,
    #[serde(with = "crate::rational::as_str")]
    pub coefficient: Q,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularVector {
    #[serde(with = "crate::rational::as_str")]
    pub lambda: Q,
    pub omega: Weight,
    pub degree: i64,
    pub terms: Vec<SvTerm>,
}

/// Reduce `x` modulo the row space of an RREF; returns the remainder.
fn reduce_mod(x: &mut [Q], rref: &Matrix, piv: &[usize]) {
    for (row, &p) in rref.iter().zip(piv) {
        if x[p].is_zero() {
            continue;
        }
        let f = x[p].clone();
        for (a, b) in x.iter_mut().zip(row) {
            *a -= &f * b;
        }
    }
}

/// Vectors of weight `Λ - ω` killed by every simple raising operator modulo
/// the compact submodule, as combinations of the monomials off its pivots.
/// Each one is checked to lie in the radical of the form.
pub fn singular_vector_search(
    alg: &SmallAlgebra,
    labels: &Labels,
    lambda: &Q,
    omega: &Weight,
    bound: i64,
) -> Result<Vec<SingularVector>> {
    check_degree(alg, omega, bound)?;
    let mut v = Verma::new(alg, labels, lambda)?;
    let basis = alg.pbw_basis(omega);
    let (_, piv) = v.compact_submodule(labels, omega);
    let free: Vec<usize> = (0..basis.len()).filter(|i| !piv.contains(i)).collect();

    // Columns: images of each free monomial under all simple raisings, mod K.
    let mut columns: Vec<Vec<Q>> = Vec::new();
    let simples: Vec<Root> = alg.rs.simple_roots().into_iter().map(|(_, r)| r.clone()).collect();
    let mut targets = Vec::new();
    for s in &simples {
        let below = omega - s;
        if alg.rs.geq(&below, &Vector::zero(below.dim())) {
            let b = alg.pbw_basis(&below);
            let k = v.compact_submodule(labels, &below);
            targets.push((s.clone(), b, k));
        }
    }
    for &i in &free {
        let x = Elem::from([(basis[i].clone(), Q::one())]);
        let mut col = Vec::new();
        for (s, b, (rref, kp)) in &targets {
            let y = v.raise(s, &x)?;
            let pos: HashMap<&Mono, usize> = b.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut coords = vec![Q::zero(); b.len()];
            for (m, c) in y {
                coords[pos[&m]] += c;
            }
            reduce_mod(&mut coords, rref, kp);
            col.extend(coords);
        }
        columns.push(col);
    }
    let rows = columns.first().map_or(0, Vec::len);
    let mat: Matrix = (0..rows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let sols = if rows == 0 {
        (0..free.len())
            .map(|i| (0..free.len()).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect()
    } else {
        linalg::kernel(&mat, free.len())
    };

    let g = v.reduced_gram(labels, omega);
    let mut out = Vec::new();
    for s in sols {
        if !linalg::mat_vec(&g.entries, &s).iter().all(Zero::is_zero) && !omega.is_zero() {
            return Err(Error::Invariant(format!("singular vector at {omega} outside the radical")));
        }
        out.push(SingularVector {
            lambda: lambda.clone(),
            omega: omega.clone(),
            degree: alg.degree(omega),
            terms: free
                .iter()
                .zip(&s)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&i, c)| SvTerm {
                    monomial: alg.monomial_name(&basis[i]),
                    coefficient: c.clone(),
                })
                .collect(),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcordanceRow {
    #[serde(with = "crate::rational::as_str")]
    pub lambda: Q,
    pub verdict: Verdict,
    pub psd: bool,
    pub expected_kernel: Vec<Weight>,
    pub minimal_kernel_weights: Vec<Weight>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcordanceReport {
    pub algebra: SmallFamily,
    pub labels: Labels,
    #[serde(with = "crate::rational::as_str")]
    pub lambda0: Q,
    #[serde(with = "crate::rational::as_str")]
    pub lambda_s: Q,
    pub max_degree: u32,
    pub rows: Vec<ConcordanceRow>,
    pub ok: bool,
}

/// The λ values probed by [`concordance`]: every reduction point, the
/// midpoints between and past them, and `λ0 + 1/2`.
pub fn probe_lambdas(lambda0: &Q, lambda_s: &Q, levels: usize) -> Vec<Q> {
    let mut out: Vec<Q> = (0..=2 * levels as i64)
        .map(|k| lambda0 + lambda_s * q(k) / q(2))
        .collect();
    out.push(lambda0 + q(1) / q(2));
    out
}

/// Compares the form against the classifier: positivity must match the
/// verdict, and the minimal kernel weights must be the `ω_q` with `λ_q = λ`.
pub fn concordance(alg: &SmallAlgebra, labels: &Labels, max_degree: u32) -> Result<ConcordanceReport> {
    let c = classify(&alg.rs, labels)?;
    let lambdas = probe_lambdas(&c.lambda0, &c.lambda_s, c.reduction_level + 1);
    let scans = positivity_scan(alg, labels, &lambdas, max_degree)?;
    let rows: Vec<ConcordanceRow> = scans
        .into_iter()
        .map(|s| {
            let verdict = c.verdict(&s.lambda);
            let mut expected: Vec<Weight> = c
                .missing
                .iter()
                .filter(|m| m.lambda_q == s.lambda && alg.degree(&m.omega) <= max_degree as i64)
                .map(|m| m.omega.clone())
                .collect();
            expected.sort();
            let mut got = s.minimal_kernel_weights.clone();
            got.sort();
            let ok = s.psd == (verdict != Verdict::NonUnitary) && (!s.psd || got == expected);
            ConcordanceRow {
                lambda: s.lambda,
                verdict,
                psd: s.psd,
                expected_kernel: expected,
                minimal_kernel_weights: got,
                ok,
            }
        })
        .collect();
    Ok(ConcordanceReport {
        algebra: alg.kind,
        labels: labels.clone(),
        lambda0: c.lambda0,
        lambda_s: c.lambda_s,
        max_degree,
        ok: rows.iter().all(|r| r.ok),
        rows,
    })
}

/// Sanity value used by tests: `<Λ, α>` read through the realization.
pub fn coroot_value(alg: &SmallAlgebra, weight: &Weight, positive: &Root) -> Option<Q> {
    let i = alg.pbw_position(positive)?;
    match alg.brackets.get(&(i, i + alg.pbw.len()))? {
        Bracket::Cartan(h) => Some(weight.dot(h)),
        Bracket::Root(..) => None,
    }
}
