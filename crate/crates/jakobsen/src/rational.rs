//! Exact rationals and rational coordinate vectors.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `a + b`, skipping the reduction when either side is zero.
fn add_q(a: &Q, b: &Q) -> Q {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        b.clone()
    } else {
        a + b
    }
}

/// Machine-integer dot product for sparse vectors with small entries.
fn small_dot(a: &Vector, b: &Vector) -> Option<Q> {
    use num_integer::Integer;
    let small = |x: &Q| Some((x.numer().to_i64()? as i128, x.denom().to_i64()? as i128));
    let (mut n, mut d) = (0i128, 1i128);
    for (x, y) in a.0.iter().zip(&b.0) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let ((xn, xd), (yn, yd)) = (small(x)?, small(y)?);
        let (pn, pd) = (xn * yn, xd * yd);
        let l = d.lcm(&pd);
        n = n.checked_mul(l / d)?.checked_add(pn.checked_mul(l / pd)?)?;
        d = l;
    }
    Some(Q::new(BigInt::from(n), BigInt::from(d)))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `-1.5`, exactly.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n = BigInt::from_str(a.trim()).ok()?;
        let d = BigInt::from_str(b.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((int, dec)) = s.split_once('.') {
        if dec.is_empty() || !dec.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int = int.trim_start_matches(['-', '+']);
        if !int.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{}{}", if int.is_empty() { "0" } else { int }, dec);
        let n = BigInt::from_str(&digits).ok()?;
        let d = num_traits::pow(BigInt::from(10), dec.len());
        let v = Q::new(n, d);
        return Some(if neg { -v } else { v });
    }
    BigInt::from_str(s).ok().map(Q::from_integer)
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn is_positive_integer(x: &Q) -> bool {
    x.is_integer() && x.is_positive()
}

pub mod as_str {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }
}

pub mod as_str_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&fmt_q(x))?;
        }
        seq.end()
    }
}

/// A vector in the ambient orthonormal frame. Ordering is lexicographic on
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Vector(pub Vec<Q>);

// Entries are kept in lowest terms, so hashing the parts agrees with Eq and
// avoids the expansion that `Ratio`'s own hash performs.
impl std::hash::Hash for Vector {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.0.len().hash(h);
        for (i, x) in self.0.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            i.hash(h);
            match (x.numer().to_i64(), x.denom().to_i64()) {
                (Some(n), Some(d)) => (n, d).hash(h),
                _ => (x.numer(), x.denom()).hash(h),
            }
        }
    }
}

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector(vec![Q::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Q::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| q(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Vector) -> Q {
        small_dot(self, other).unwrap_or_else(|| {
            self.0
                .iter()
                .zip(&other.0)
                .fold(Q::zero(), |acc, (a, b)| acc + a * b)
        })
    }

    pub fn norm2(&self) -> Q {
        self.dot(self)
    }

    pub fn scale(&self, c: &Q) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Vector>>(dim: usize, it: I) -> Vector {
        let mut acc = Vector::zero(dim);
        for v in it {
            acc += v;
        }
        acc
    }

    pub fn coords(&self) -> Vec<String> {
        self.0.iter().map(fmt_q).collect()
    }
}

impl Index<usize> for Vector {
    type Output = Q;
    fn index(&self, i: usize) -> &Q {
        &self.0[i]
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords().join(","))
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        as_str_vec::serialize(&self.0, s)
    }
}

impl<'a> Add<&'a Vector> for &'a Vector {
    type Output = Vector;
    fn add(self, o: &Vector) -> Vector {
        Vector(self.0.iter().zip(&o.0).map(|(a, b)| add_q(a, b)).collect())
    }
}

impl<'a> Sub<&'a Vector> for &'a Vector {
    type Output = Vector;
    fn sub(self, o: &Vector) -> Vector {
        Vector(self.0.iter().zip(&o.0).map(|(a, b)| if b.is_zero() { a.clone() } else { a - b }).collect())
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, o: Vector) -> Vector {
        &self + &o
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(self, o: Vector) -> Vector {
        &self - &o
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        -&self
    }
}

impl Mul<&Vector> for &Q {
    type Output = Vector;
    fn mul(self, v: &Vector) -> Vector {
        v.scale(self)
    }
}

impl AddAssign<&Vector> for Vector {
    fn add_assign(&mut self, o: &Vector) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&Vector> for Vector {
    fn sub_assign(&mut self, o: &Vector) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("-13/2"), Some(frac(-13, 2)));
        assert_eq!(parse_q("-0.5"), Some(frac(-1, 2)));
        assert_eq!(parse_q("-1.25"), Some(frac(-5, 4)));
        assert_eq!(parse_q(".5"), Some(frac(1, 2)));
        assert_eq!(parse_q("7"), Some(q(7)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
    }

    #[test]
    fn formatting() {
        assert_eq!(fmt_q(&frac(-15, 2)), "-15/2");
        assert_eq!(fmt_q(&q(-8)), "-8");
        assert_eq!(Vector(vec![frac(1, 2), q(-1)]).to_string(), "(1/2,-1)");
    }
}
