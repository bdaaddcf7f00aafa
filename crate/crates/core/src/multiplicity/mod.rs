//! Multiplicities of rigid tropical lines.
//!
//! Two independent routes: the absolute determinant of the integer
//! incidence system in `(V1, t)`, and the cokernel torsion of the Čech map
//! of an admissible cover of the line (two trivalent opens, four univalent
//! opens at the ends, five overlaps).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::linalg::{
    cokernel_torsion, determinant, hermite_normal_form, integer_kernel, saturate, CokernelOrder, IntMatrix, IntVector,
};
use crate::search::{CombinatorialType, ConstraintTuple, TropicalLine};
use crate::tropical::{EdgeKind, FacetFrame, QuinticCurveSet, RAYS};
use crate::{Error, Result, Scalar};

/// Saturated rank-2 lattice at a univalent end: the kernel of the
/// monodromy `T - id` around the discriminant locus the leg lands on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintPlane {
    pub ray: IntVector,
    /// Hermite normal form basis.
    pub basis: Vec<IntVector>,
    /// The lift of the landing edge direction the plane was built from.
    pub lift: IntVector,
}

fn iv(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn cross(a: &[BigInt], b: &[BigInt]) -> IntVector {
    vec![&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(v: IntVector) -> IntVector {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

impl ConstraintPlane {
    /// `saturate(span{ray, lift})`.
    pub fn from_lift(ray: IntVector, lift: IntVector) -> Self {
        let basis = saturate(&[ray.clone(), lift.clone()]);
        ConstraintPlane { ray, basis, lift }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        dot(&self.normal(), v).is_zero()
    }

    /// Primitive functional `lambda` with kernel the plane.
    pub fn normal(&self) -> IntVector {
        primitive(cross(&self.basis[0], &self.basis[1]))
    }

    /// `T = id + ray * lambda^T`.
    pub fn monodromy(&self) -> IntMatrix {
        let l = self.normal();
        IntMatrix::from_fn(3, 3, |i, j| BigInt::from(i64::from(i == j)) + &self.ray[i] * &l[j])
    }

    /// The plane transported by `g`.
    pub fn transformed(&self, g: &IntMatrix) -> Self {
        ConstraintPlane::from_lift(g.mul_vec(&self.ray), g.mul_vec(&self.lift))
    }
}

/// Constraint plane of leg `leg` (0-based) landing on an edge of direction
/// `direction` in the `pi_leg` frame.
pub fn constraint_plane(leg: usize, direction: [i64; 2]) -> ConstraintPlane {
    ConstraintPlane::from_lift(iv(&RAYS[leg]), iv(&FacetFrame::lift(leg, direction)))
}

pub fn planes_of<S: Clone>(line: &TropicalLine<S>) -> [ConstraintPlane; 4] {
    [0, 1, 2, 3].map(|j| constraint_plane(j, line.legs[j].direction))
}

/// Incidence matrix of a line: row `j` is `(pi_j^T n_j, <pi_j^T n_j, delta>)`
/// for legs at `V2` and `(pi_j^T n_j, 0)` for legs at `V1`.
pub fn incidence_matrix<S: Clone>(line: &TropicalLine<S>) -> IntMatrix {
    let delta = line.ctype.bounded_direction();
    let rows = (0..4)
        .map(|j| {
            let d = line.legs[j].direction;
            let n = FacetFrame::pullback(j, [-d[1], d[0]]);
            let s: i64 = if line.ctype.at_second(j) { (0..3).map(|k| n[k] * delta[k]).sum() } else { 0 };
            iv(&[n[0], n[1], n[2], s])
        })
        .collect();
    IntMatrix::from_rows(rows, 4)
}

/// `|det|` of the incidence matrix.
pub fn incidence_multiplicity<S: Clone>(line: &TropicalLine<S>) -> BigInt {
    determinant(&incidence_matrix(line)).abs()
}

/// One univalent end of the cover.
#[derive(Clone, Debug)]
pub struct CechLeg {
    /// Whether the end hangs off the second trivalent vertex.
    pub at_second: bool,
    pub plane: ConstraintPlane,
}

// Canonical surjection Z^3 -> Z^2 with kernel Z v: HNF basis of v^perp.
fn quotient(v: &[BigInt]) -> Result<IntMatrix> {
    let k = integer_kernel(&IntMatrix::from_rows(vec![v.to_vec()], 3));
    Ok(hermite_normal_form(&IntMatrix::from_rows(k, 3)))
}

/// The 10x10 Čech matrix with overlap signs `signs` (`+1`/`-1`; the
/// standard convention is all `+1`).
///
/// Columns: `Z^3` at `V1`, `Z^3` at `V2`, then `A_j / Z r_j` for the four
/// ends. Rows: `Z^3 / Z delta` for the bounded edge, then `Z^3 / Z r_j` for
/// each leg. Every overlap gets `+` from its lower-index open in the order
/// `V1 < V2 < u_1 < ... < u_4` and `-` from the other, times its sign.
pub fn cech_matrix(delta: &[BigInt], legs: &[CechLeg; 4], signs: [i64; 5]) -> Result<IntMatrix> {
    let mut m = IntMatrix::zeros(10, 10);
    let q = quotient(delta)?;
    for r in 0..2 {
        for k in 0..3 {
            m[(r, k)] = &q[(r, k)] * signs[0];
            m[(r, 3 + k)] = -&q[(r, k)] * signs[0];
        }
    }
    for (j, leg) in legs.iter().enumerate() {
        if !leg.plane.contains(&leg.plane.ray) {
            return Err(Error::PlaneMissingLegDirection { leg: j + 1 });
        }
        let q = quotient(&leg.plane.ray)?;
        let row0 = 2 + 2 * j;
        let vcol = if leg.at_second { 3 } else { 0 };
        for r in 0..2 {
            for k in 0..3 {
                m[(row0 + r, vcol + k)] = &q[(r, k)] * signs[1 + j];
            }
        }
        // Generator of the rank-1 image of A_j in Z^3 / Z r_j.
        let images: Vec<IntVector> = leg.plane.basis.iter().map(|b| q.mul_vec(b)).collect();
        let g = images
            .iter()
            .find(|v| v.iter().any(|x| !x.is_zero()))
            .cloned()
            .map(primitive)
            .ok_or(Error::PlaneMissingLegDirection { leg: j + 1 })?;
        for r in 0..2 {
            m[(row0 + r, 6 + j)] = -&g[r] * signs[1 + j];
        }
    }
    Ok(m)
}

fn line_legs<S: Clone>(line: &TropicalLine<S>, planes: &[ConstraintPlane; 4]) -> [CechLeg; 4] {
    [0, 1, 2, 3].map(|j| CechLeg { at_second: line.ctype.at_second(j), plane: planes[j].clone() })
}

pub fn build_cech_matrix<S: Clone>(line: &TropicalLine<S>, planes: &[ConstraintPlane; 4]) -> Result<IntMatrix> {
    for j in 0..4 {
        if planes[j].ray != iv(&RAYS[j]) || !planes[j].contains(&planes[j].ray) {
            return Err(Error::PlaneMissingLegDirection { leg: j + 1 });
        }
    }
    cech_matrix(&iv(&line.ctype.bounded_direction()), &line_legs(line, planes), [1; 5])
}

/// The Čech matrix a tuple would give, whether or not its incidence
/// system has a unique solution; it only depends on the landing edge
/// directions.
pub fn tuple_cech_matrix<S: Scalar>(
    tuple: &ConstraintTuple,
    ctype: CombinatorialType,
    curves: &QuinticCurveSet<S>,
) -> Result<IntMatrix> {
    let legs = [0, 1, 2, 3].map(|j| CechLeg {
        at_second: ctype.at_second(j),
        plane: constraint_plane(j, curves.get(tuple.facet, j).curve.edges[tuple.edges[j]].direction),
    });
    cech_matrix(&iv(&ctype.bounded_direction()), &legs, [1; 5])
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Topology {
    S3,
    RP3,
    /// Rational homology sphere with `|H_1| = m`.
    RationalHomologySphere(u64),
}

impl Topology {
    pub fn from_order(m: u64) -> Self {
        match m {
            1 => Topology::S3,
            2 => Topology::RP3,
            m => Topology::RationalHomologySphere(m),
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Topology::S3 => f.write_str("S3"),
            Topology::RP3 => f.write_str("RP3"),
            Topology::RationalHomologySphere(m) => write!(f, "QHS(|H1|={m})"),
        }
    }
}

impl Serialize for Topology {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicity {
    pub value: u64,
    pub topology: Topology,
}

/// Multiplicity as the cokernel torsion of the Čech matrix.
pub fn multiplicity<S: Clone>(line: &TropicalLine<S>, planes: &[ConstraintPlane; 4]) -> Result<Multiplicity> {
    let m = build_cech_matrix(line, planes)?;
    match cokernel_torsion(&m) {
        CokernelOrder::Finite(order) => {
            let value = order.to_u64().ok_or_else(|| Error::Overflow(format!("multiplicity {order}")))?;
            Ok(Multiplicity { value, topology: Topology::from_order(value) })
        }
        CokernelOrder::Infinite { .. } => Err(Error::NotRigid),
    }
}

/// All four legs land on bounded curve edges.
pub fn is_admissible<S: Clone>(line: &TropicalLine<S>) -> bool {
    line.legs.iter().all(|l| l.kind == EdgeKind::Internal)
}

/// Whether `g` is an integer matrix with determinant `±1`.
pub fn is_unimodular_matrix(g: &IntMatrix) -> bool {
    g.rows() == g.cols() && determinant(g).abs().is_one()
}
