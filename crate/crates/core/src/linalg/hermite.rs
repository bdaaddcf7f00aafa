use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row-style Hermite normal form of the row lattice of `m`.
///
/// The result has one row per basis vector of the row lattice (zero rows
/// dropped), pivots strictly increasing to the right, positive pivots, and
/// entries above each pivot reduced into `[0, pivot)`. It depends only on
/// the lattice spanned by the rows.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down column c on rows r.. until a single nonzero remains.
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| a[(i, c)].abs() < a[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(r, b);
            let pivot = a[(r, c)].clone();
            let mut clean = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = -a[(i, c)].div_floor(&pivot);
                a.add_row_multiple(i, r, &q);
                clean &= a[(i, c)].is_zero();
            }
            if clean {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            for j in 0..cols {
                let v = -a[(r, j)].clone();
                a[(r, j)] = v;
            }
        }
        let pivot = a[(r, c)].clone();
        for i in 0..r {
            let q = -a[(i, c)].div_floor(&pivot);
            if !q.is_zero() {
                a.add_row_multiple(i, r, &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let kept: Vec<Vec<BigInt>> = (0..r).map(|i| a.row(i).to_vec()).collect();
    IntMatrix::from_rows(kept, cols)
}
