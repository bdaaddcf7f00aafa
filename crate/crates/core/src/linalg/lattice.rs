use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{hermite_normal_form, smith_normal_form, IntMatrix, IntVector};

fn rows_matrix(vs: &[IntVector]) -> Option<IntMatrix> {
    let n = vs.first()?.len();
    assert!(vs.iter().all(|v| v.len() == n), "vectors live in different lattices");
    Some(IntMatrix::from_rows(vs.to_vec(), n))
}

/// Basis of the saturation `{x : k x in span(vs) for some k >= 1}`, in
/// Hermite normal form.
pub fn saturate(vs: &[IntVector]) -> Vec<IntVector> {
    let Some(m) = rows_matrix(vs) else {
        return Vec::new();
    };
    // m = L^-1 D R^-1; the leading rows of R^-1 span the saturated row space.
    let snf = smith_normal_form(&m);
    let rank = snf.rank();
    let r_inv = inverse_unimodular(&snf.right);
    let basis = IntMatrix::from_rows((0..rank).map(|i| r_inv.row(i).to_vec()).collect(), m.cols());
    let h = hermite_normal_form(&basis);
    h.iter_rows().map(|r| r.to_vec()).collect()
}

/// Index of `span(vs)` inside its saturation; 1 iff saturated.
pub fn sublattice_index(vs: &[IntVector]) -> BigInt {
    let Some(m) = rows_matrix(vs) else {
        return BigInt::one();
    };
    smith_normal_form(&m).diag.iter().filter(|d| !d.is_zero()).fold(BigInt::one(), |a, d| a * d)
}

pub fn is_saturated(vs: &[IntVector]) -> bool {
    sublattice_index(vs).is_one()
}

/// Integer basis (HNF) of `{x in Z^cols : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVector> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let cols: Vec<IntVector> = (rank..m.cols()).map(|j| snf.right.column(j)).collect();
    if cols.is_empty() {
        return cols;
    }
    let h = hermite_normal_form(&IntMatrix::from_rows(cols, m.cols()));
    h.iter_rows().map(|r| r.to_vec()).collect()
}

// Inverse of a unimodular matrix via adjoined identity and exact row reduction.
fn inverse_unimodular(u: &IntMatrix) -> IntMatrix {
    let n = u.rows();
    let mut aug = IntMatrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            u[(i, j)].clone()
        } else if j - n == i {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let h = hermite_normal_form(&aug);
    // Unimodular: the HNF of [U | I] is [I | U^-1].
    aug = h;
    IntMatrix::from_fn(n, n, |i, j| aug[(i, n + j)].clone())
}
