//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::rational::Q;

pub type Matrix = Vec<Vec<Q>>;

/// Rank of a rectangular matrix.
pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut a: Matrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|i| !a[*i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pivot;
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] -= t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Rank of an integer matrix.
pub fn rank_i64(m: &[Vec<i64>]) -> usize {
    let q: Matrix = m.iter().map(|r| r.iter().map(|x| Q::from_integer((*x).into())).collect()).collect();
    rank(&q)
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|i| !a[*i][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn multiply(a: &[Vec<Q>], b: &[Vec<Q>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(Q::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect())
        .collect()
}

pub fn is_identity(m: &[Vec<Q>]) -> bool {
    m.iter().enumerate().all(|(i, r)| {
        r.len() == m.len() && r.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    #[test]
    fn two_by_two_inverse() {
        let b = vec![vec![q_frac(-1, 120), q_frac(29, 720)], vec![q(0), q_frac(1, 72)]];
        let a = inverse(&b).unwrap();
        assert_eq!(a, vec![vec![q(-120), q(348)], vec![q(0), q(72)]]);
        assert!(is_identity(&multiply(&a, &b)));
    }

    #[test]
    fn singular_and_rank() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(inverse(&m).is_none());
        assert_eq!(rank(&m), 1);
        assert_eq!(rank_i64(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]]), 2);
        assert_eq!(rank_i64(&[]), 0);
    }
}
