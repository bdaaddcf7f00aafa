use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `left * m * right == diag(diag)` with unimodular `left`, `right` and
/// `diag[0] | diag[1] | ...`, all entries nonnegative. `diag` has
/// `min(rows, cols)` entries, trailing ones possibly zero.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Order of the cokernel of `m: Z^cols -> Z^rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CokernelOrder {
    /// Cokernel is finite of the given order.
    Finite(BigInt),
    /// Cokernel has a free part of the given rank.
    Infinite { free_rank: usize },
}

/// Invariant factors and free rank of `coker(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl Cokernel {
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().fold(BigInt::one(), |acc, d| acc * d)
    }
}

// Smallest nonzero |entry| in the trailing block, first in row-major order.
fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        while let Some((pi, pj)) = find_pivot(&a, t) {
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let pivot = a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&pivot);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&pivot);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Pivot row and column are clear; enforce divisibility of the rest.
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            let minus = BigInt::from(-1);
            for j in 0..cols {
                let v = &a[(t, j)] * &minus;
                a[(t, j)] = v;
            }
            for j in 0..rows {
                let v = &left[(t, j)] * &minus;
                left[(t, j)] = v;
            }
        }
    }

    let diag = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SmithForm { diag, left, right }
}

pub fn cokernel(m: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    Cokernel {
        invariant_factors: snf.diag[..rank].iter().filter(|d| !d.is_one()).cloned().collect(),
        free_rank: m.rows() - rank,
    }
}

/// Order of the torsion subgroup of `coker(m)`, or the free rank when the
/// cokernel is infinite.
pub fn cokernel_torsion(m: &IntMatrix) -> CokernelOrder {
    let c = cokernel(m);
    if c.free_rank > 0 {
        CokernelOrder::Infinite { free_rank: c.free_rank }
    } else {
        CokernelOrder::Finite(c.torsion_order())
    }
}
