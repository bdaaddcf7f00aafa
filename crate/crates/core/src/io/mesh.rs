use std::fmt::Write;

use crate::arrangement::ConflictGraph;
use crate::search::TropicalLine;
use crate::tropical::{EdgeKind, QuinticCurveSet, RAYS};
use crate::Scalar;

/// Vertices and polyline elements written to an OBJ file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ObjCounts {
    pub vertices: usize,
    pub elements: usize,
}

// Linear preimage of a plane point under `pi_j`.
fn lift(j: usize, p: [f64; 2]) -> [f64; 3] {
    match j {
        0 => [0.0, p[0], p[1]],
        1 => [p[0], 0.0, p[1]],
        _ => [p[0], p[1], 0.0],
    }
}

fn at_infinity(j: usize, p: [f64; 2], radius: f64) -> [f64; 3] {
    let q = lift(j, p);
    [0, 1, 2].map(|k| q[k] + radius * RAYS[j][k] as f64)
}

fn f2<S: Scalar>(p: &[S; 2]) -> [f64; 2] {
    [p[0].to_f64_lossy(), p[1].to_f64_lossy()]
}

struct Obj {
    text: String,
    counts: ObjCounts,
}

impl Obj {
    fn vertex(&mut self, v: [f64; 3]) -> usize {
        writeln!(self.text, "v {:.6} {:.6} {:.6}", v[0], v[1], v[2]).unwrap();
        self.counts.vertices += 1;
        self.counts.vertices
    }

    fn segment(&mut self, a: usize, b: usize) {
        writeln!(self.text, "l {a} {b}").unwrap();
        self.counts.elements += 1;
    }
}

/// Wavefront OBJ of one facet chart: each curve at infinity `C_{facet, j}`
/// drawn in the plane `lift_j + radius * r_j`, with its rays cut at length
/// `radius`, and each line with its legs ending on those planes. `radius`
/// should exceed every coordinate of the lines.
pub fn facet_obj<S: Scalar>(
    facet: usize,
    curves: &QuinticCurveSet<S>,
    lines: &[TropicalLine<S>],
    radius: f64,
) -> (String, ObjCounts) {
    let mut obj = Obj { text: format!("# facet {facet}\n"), counts: ObjCounts::default() };
    for j in 0..4 {
        let curve = &curves.get(facet, j).curve;
        writeln!(obj.text, "o curve_{facet}_{j}").unwrap();
        let ids: Vec<usize> =
            curve.vertices.iter().map(|v| obj.vertex(at_infinity(j, f2(&v.position), radius))).collect();
        for e in &curve.edges {
            let tail = ids[e.tail];
            let head = match (e.kind, e.head) {
                (EdgeKind::Internal, Some(h)) => ids[h],
                _ => {
                    let p = f2(&curve.vertices[e.tail].position);
                    let d = e.direction.map(|x| x as f64);
                    let n = (d[0] * d[0] + d[1] * d[1]).sqrt();
                    obj.vertex(at_infinity(j, [p[0] + radius * d[0] / n, p[1] + radius * d[1] / n], radius))
                }
            };
            obj.segment(tail, head);
        }
    }
    for (i, line) in lines.iter().enumerate() {
        writeln!(obj.text, "o line_{facet}_{i}").unwrap();
        let a = obj.vertex(line.v1.clone().map(|x| x.to_f64_lossy()));
        let b = obj.vertex(line.v2.clone().map(|x| x.to_f64_lossy()));
        obj.segment(a, b);
        for (j, leg) in line.legs.iter().enumerate() {
            let end = obj.vertex(at_infinity(j, f2(&leg.landing), radius));
            obj.segment(if line.ctype.at_second(j) { b } else { a }, end);
        }
    }
    (obj.text, obj.counts)
}

/// The adjacency matrix in Matrix Market `coordinate pattern symmetric`
/// form, lower triangle, 1-based; `comments` become `%` lines.
pub fn matrix_market(g: &ConflictGraph, comments: &[String]) -> String {
    let mut out = String::from("%%MatrixMarket matrix coordinate pattern symmetric\n");
    for c in comments {
        writeln!(out, "% {c}").unwrap();
    }
    writeln!(out, "{} {} {}", g.len(), g.len(), g.edge_count()).unwrap();
    for (a, b) in g.edges() {
        writeln!(out, "{} {}", b + 1, a + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_market_layout() {
        let g = ConflictGraph::from_edges(3, [(0, 1), (1, 2)]);
        let text = matrix_market(&g, &["seed=1".into()]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines, ["%%MatrixMarket matrix coordinate pattern symmetric", "% seed=1", "3 3 2", "2 1", "3 2"]);
    }

    #[test]
    fn legs_end_on_their_planes() {
        for j in 0..4 {
            let p = at_infinity(j, [1.5, -2.0], 100.0);
            let back = crate::tropical::FacetFrame::projection(j);
            let proj = [0, 1].map(|r| (0..3).map(|k| back[r][k] as f64 * p[k]).sum::<f64>());
            assert_eq!(proj, [1.5, -2.0]);
        }
    }
}
