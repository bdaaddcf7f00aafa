use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntMatrix, Matrix};
use crate::Scalar;

/// Exact classification of the solution set of `a x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution<S> {
    Unique(Vec<S>),
    Inconsistent,
    /// `point + span(kernel)`; the kernel basis is nonempty.
    Family {
        point: Vec<S>,
        kernel: Vec<Vec<S>>,
    },
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap_rows(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// Rank over Q of an integer matrix.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[(i, j)] * &a[(r, c)] - &a[(i, c)] * &a[(r, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, c)] = BigInt::zero();
        }
        prev = a[(r, c)].clone();
        r += 1;
    }
    r
}

// Reduced row echelon form in place; returns pivot columns.
fn rref<S: Scalar>(a: &mut Matrix<S>) -> Vec<usize> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = S::one() / a[(r, c)].clone();
        for j in c..cols {
            let v = a[(r, j)].clone() * inv.clone();
            a[(r, j)] = v;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = -a[(i, c)].clone();
            a.add_row_multiple(i, r, &f);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_rational<S: Scalar>(m: &Matrix<S>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

pub fn solve_rational<S: Scalar>(a: &Matrix<S>, b: &[S]) -> LinearSolution<S> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let n = a.cols();
    let mut aug = Matrix::from_fn(a.rows(), n + 1, |i, j| if j < n { a[(i, j)].clone() } else { b[i].clone() });
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return LinearSolution::Inconsistent;
    }
    let mut point = vec![S::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        point[c] = aug[(r, n)].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return LinearSolution::Unique(point);
    }
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![S::zero(); n];
            v[f] = S::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -aug[(r, f)].clone();
            }
            v
        })
        .collect();
    LinearSolution::Family { point, kernel }
}
