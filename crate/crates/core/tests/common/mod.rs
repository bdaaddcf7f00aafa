#![allow(dead_code)]

use num_bigint::BigInt;
use quintic_lines::linalg::IntMatrix;
use quintic_lines::polytope::make_heights;
use quintic_lines::search::{enumerate_facet, CombinatorialType, FacetCensus, LegIncidence, LineFlags, TropicalLine};
use quintic_lines::tropical::{build_curve_set, EdgeKind, FacetFrame, QuinticCurveSet};
use quintic_lines::{Heights, Rat, Scalar};

/// Laplace expansion along rows, memoized over the set of used columns.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut memo = vec![None; 1 << n];
    fn go(m: &[Vec<i64>], row: usize, used: usize, memo: &mut [Option<i128>]) -> i128 {
        if row == m.len() {
            return 1;
        }
        if let Some(v) = memo[used] {
            return v;
        }
        let mut acc = 0i128;
        let mut sign = 1i128;
        for c in 0..m.len() {
            if used >> c & 1 == 1 {
                continue;
            }
            if m[row][c] != 0 {
                acc += sign * m[row][c] as i128 * go(m, row + 1, used | 1 << c, memo);
            }
            sign = -sign;
        }
        memo[used] = Some(acc);
        acc
    }
    go(m, 0, 0, &mut memo)
}

pub fn to_int_matrix(m: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        m.first().map_or(0, Vec::len),
    )
}

pub fn to_i64(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| i64::try_from(x).expect("small entry")).collect()).collect()
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::from_frac(p, q)
}

pub fn heights(seed: u64) -> Heights {
    make_heights(seed, &rat(1, 100)).unwrap()
}

pub fn curves(seed: u64) -> QuinticCurveSet<Rat> {
    build_curve_set(&heights(seed)).unwrap()
}

pub fn facet(seed: u64, f: usize) -> (QuinticCurveSet<Rat>, FacetCensus<Rat>) {
    let c = curves(seed);
    let census = enumerate_facet(f, &c).unwrap();
    (c, census)
}

/// `V1 = 0`, `V2 = (-1, -1, 0)`, `t = 1`, type `12|34`, with legs 0, 1
/// landing on edges of direction `(0, 1)` and legs 2, 3 on `(1, 0)`.
pub fn toy_line() -> TropicalLine<Rat> {
    let z = Rat::from_i64(0);
    let v1 = [z.clone(), z.clone(), z];
    let v2 = [-1, -1, 0].map(Rat::from_i64);
    let dirs = [[0, 1], [0, 1], [1, 0], [1, 0]];
    let legs = [0, 1, 2, 3].map(|j| LegIncidence {
        leg: j,
        edge: j,
        kind: EdgeKind::Internal,
        direction: dirs[j],
        landing: FacetFrame::project(j, if j < 2 { &v1 } else { &v2 }),
    });
    TropicalLine {
        facet: 1,
        ctype: CombinatorialType::T12x34,
        v1,
        v2,
        t: Rat::from_i64(1),
        legs,
        flags: LineFlags::default(),
    }
}
