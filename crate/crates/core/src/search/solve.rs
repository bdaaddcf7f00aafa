use super::{CombinatorialType, ConstraintTuple, LegIncidence, LineFlags, TropicalLine};
use crate::linalg::{solve_rational, LinearSolution, Matrix};
use crate::tropical::{EdgeLocation, FacetFrame, QuinticCurveSet};
use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineOutcome<S> {
    /// The unique solution; inspect its flags before use.
    Line(TropicalLine<S>),
    /// No solution, or the solution misses a closed landing edge.
    None,
    /// Positive-dimensional solution set.
    Family,
}

/// The 4x4 system in `(V1, t)`: row `j` says that `pi_j` of leg `j`'s
/// vertex lies on the supporting line of its edge, `<n_j, pi_j(V)> = <n_j, B_j>`
/// for the edge normal `n_j` and base point `B_j`.
pub fn incidence_system<S: Scalar>(
    tuple: &ConstraintTuple,
    ctype: CombinatorialType,
    curves: &QuinticCurveSet<S>,
) -> (Matrix<S>, Vec<S>) {
    let delta = ctype.bounded_direction();
    let mut rows = Vec::with_capacity(4);
    let mut rhs = Vec::with_capacity(4);
    for j in 0..4 {
        let curve = &curves.get(tuple.facet, j).curve;
        let e = tuple.edges[j];
        let d = curve.edges[e].direction;
        let n = [-d[1], d[0]];
        let big_n = FacetFrame::pullback(j, n);
        let shift: i64 = if ctype.at_second(j) { (0..3).map(|k| big_n[k] * delta[k]).sum() } else { 0 };
        rows.push(vec![S::from_i64(big_n[0]), S::from_i64(big_n[1]), S::from_i64(big_n[2]), S::from_i64(shift)]);
        rhs.push(crate::scalar::dot(&n, curve.base(e)));
    }
    (Matrix::from_rows(rows, 4), rhs)
}

/// Solves the incidence system of one tuple exactly.
pub fn solve_line<S: Scalar>(
    tuple: &ConstraintTuple,
    ctype: CombinatorialType,
    curves: &QuinticCurveSet<S>,
) -> LineOutcome<S> {
    let (m, rhs) = incidence_system(tuple, ctype, curves);
    let z = match solve_rational(&m, &rhs) {
        LinearSolution::Unique(z) => z,
        LinearSolution::Inconsistent => return LineOutcome::None,
        LinearSolution::Family { .. } => return LineOutcome::Family,
    };
    let v1 = [z[0].clone(), z[1].clone(), z[2].clone()];
    let t = z[3].clone();
    let delta = ctype.bounded_direction();
    let v2 = [0, 1, 2].map(|k| v1[k].clone() + t.clone() * S::from_i64(delta[k]));
    let mut special = false;
    let mut legs = Vec::with_capacity(4);
    for j in 0..4 {
        let curve = &curves.get(tuple.facet, j).curve;
        let e = tuple.edges[j];
        let v = if ctype.at_second(j) { &v2 } else { &v1 };
        let landing = FacetFrame::project(j, v);
        match curve.point_on_edge(e, &landing) {
            EdgeLocation::Outside => return LineOutcome::None,
            EdgeLocation::Vertex => special = true,
            EdgeLocation::Interior => {}
        }
        legs.push(LegIncidence {
            leg: j,
            edge: e,
            kind: curve.edges[e].kind,
            direction: curve.edges[e].direction,
            landing,
        });
    }
    let flags = LineFlags { special, degenerate_type: !t.is_positive() };
    let legs: [LegIncidence<S>; 4] = legs.try_into().expect("four legs");
    LineOutcome::Line(TropicalLine { facet: tuple.facet, ctype, v1, v2, t, legs, flags })
}
