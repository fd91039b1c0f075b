//! Dense exact linear algebra over `Q`.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

pub type Matrix = Vec<Vec<Q>>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn row_reduce(rows: &[Vec<Q>], ncols: usize) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(a: &[Vec<Q>]) -> usize {
    let ncols = a.first().map_or(0, Vec::len);
    row_reduce(a, ncols).1.len()
}

/// Unique solution of a square system, or `None` when singular.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (m, piv) = row_reduce(&aug, n + 1);
    if piv.len() != n || piv.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

pub fn inverse(a: &[Vec<Q>]) -> Option<Matrix> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let (m, piv) = row_reduce(&aug, 2 * n);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis of `{x : a x = 0}`.
pub fn kernel(a: &[Vec<Q>], ncols: usize) -> Matrix {
    let (m, piv) = row_reduce(a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in m.iter().zip(&piv) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

pub fn det(a: &[Vec<Q>]) -> Q {
    let n = a.len();
    let mut m: Matrix = a.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            if f.is_zero() {
                continue;
            }
            let prow = m[c].clone();
            for (x, y) in m[i].iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
    }
    d
}

pub fn mat_vec(a: &[Vec<Q>], x: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(Q::zero(), |s, (r, v)| s + r * v))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsdReport {
    pub psd: bool,
    /// `dim - rank`, only meaningful when `psd` holds.
    pub nullity: usize,
}

/// Exact positive semidefiniteness of a symmetric matrix by symmetric
/// pivoting on the first nonzero remaining diagonal entry.
pub fn psd(g: &[Vec<Q>]) -> PsdReport {
    let n = g.len();
    let mut m: Matrix = g.to_vec();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    while !alive.is_empty() {
        let Some(pos) = alive.iter().position(|&i| !m[i][i].is_zero()) else {
            let nonzero = alive
                .iter()
                .any(|&i| alive.iter().any(|&j| !m[i][j].is_zero()));
            if nonzero {
                return PsdReport { psd: false, nullity: 0 };
            }
            break;
        };
        let p = alive.remove(pos);
        if m[p][p].is_negative() {
            return PsdReport { psd: false, nullity: 0 };
        }
        rank += 1;
        let prow = m[p].clone();
        for &i in &alive {
            let f = &m[i][p] / &prow[p];
            if f.is_zero() {
                continue;
            }
            for &j in &alive {
                let d = &f * &prow[j];
                m[i][j] -= d;
            }
        }
    }
    PsdReport {
        psd: true,
        nullity: n - rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn solve_and_inverse() {
        let a = mat(&[&[2, -1], &[-1, 2]]);
        assert_eq!(solve(&a, &[q(1), q(0)]).unwrap(), vec![q(2) / q(3), q(1) / q(3)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_vec(&inv, &[q(1), q(0)]), vec![q(2) / q(3), q(1) / q(3)]);
        assert!(solve(&mat(&[&[1, 1], &[2, 2]]), &[q(1), q(2)]).is_none());
    }

    #[test]
    fn determinant() {
        assert_eq!(det(&mat(&[&[0, 1], &[1, 0]])), q(-1));
        assert_eq!(det(&mat(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]])), q(4));
        assert_eq!(det(&[]), q(1));
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn psd_cases() {
        assert_eq!(psd(&mat(&[&[1, 1], &[1, 1]])), PsdReport { psd: true, nullity: 1 });
        assert!(!psd(&mat(&[&[1, 2], &[2, 1]])).psd);
        assert!(!psd(&mat(&[&[0, 1], &[1, 0]])).psd);
        assert!(!psd(&mat(&[&[-1]])).psd);
        assert_eq!(psd(&mat(&[&[0, 0], &[0, 0]])), PsdReport { psd: true, nullity: 2 });
    }
}
