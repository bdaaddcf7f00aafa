use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::polytope::{is_unimodular, RegularSubdivision};
use crate::{Error, Result, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// Bounded edge, dual to an interior edge of the triangulation.
    Internal,
    /// Ray, dual to a boundary edge.
    Outer,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveVertex<S> {
    pub position: [S; 2],
    /// Dual triangle, as sorted point indices of the subdivision.
    pub triangle: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveEdge {
    pub kind: EdgeKind,
    pub tail: usize,
    /// `None` for rays.
    pub head: Option<usize>,
    /// Primitive; `head - tail` is a positive multiple of it.
    pub direction: [i64; 2],
    /// Dual triangulation edge, as sorted point indices.
    pub dual: [usize; 2],
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EdgeLocation {
    Interior,
    Vertex,
    Outside,
}

/// Corner locus of `min_m (a_m + <m, X>)` over a triangulated lattice
/// polygon. Edges are sorted by their dual triangulation edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPlaneCurve<S> {
    pub vertices: Vec<CurveVertex<S>>,
    pub edges: Vec<CurveEdge>,
}

fn rot(v: [i64; 2]) -> [i64; 2] {
    [-v[1], v[0]]
}

fn primitive2(v: [i64; 2]) -> [i64; 2] {
    let g = num_integer::gcd(v[0], v[1]);
    [v[0] / g, v[1] / g]
}

fn dot2<S: Scalar>(a: [i64; 2], x: &[S; 2]) -> S {
    S::from_i64(a[0]) * x[0].clone() + S::from_i64(a[1]) * x[1].clone()
}

// Point where the three lifted monomials of a triangle tie.
pub(crate) fn tie_point<S: Scalar>(m: [[i64; 2]; 3], a: [&S; 3]) -> [S; 2] {
    // (m1 - m0) . X = a0 - a1, (m2 - m0) . X = a0 - a2
    let p = [m[1][0] - m[0][0], m[1][1] - m[0][1]];
    let q = [m[2][0] - m[0][0], m[2][1] - m[0][1]];
    let det = p[0] * q[1] - p[1] * q[0];
    assert!(det != 0, "degenerate triangle");
    let b0 = a[0].clone() - a[1].clone();
    let b1 = a[0].clone() - a[2].clone();
    let det = S::from_i64(det);
    let x = (b0.clone() * S::from_i64(q[1]) - b1.clone() * S::from_i64(p[1])) / det.clone();
    let y = (b1 * S::from_i64(p[0]) - b0 * S::from_i64(q[0])) / det;
    [x, y]
}

/// The plane tropical curve dual to a unimodular triangulation `s` of a
/// lattice polygon. `frame[i]` and `heights[i]` are the lattice coordinates
/// and height of local point `i`; dual keys use `s.points`.
pub fn dual_plane_curve<S: Scalar>(
    s: &RegularSubdivision,
    frame: &[[i64; 2]],
    heights: &[S],
) -> Result<TropicalPlaneCurve<S>> {
    if !is_unimodular(s)? {
        return Err(Error::NotUnimodular);
    }
    let global = |i: usize| s.points[i];
    let mut vertices = Vec::with_capacity(s.cells.len());
    let mut by_edge: HashMap<[usize; 2], Vec<(usize, usize)>> = HashMap::new();
    for (c, cell) in s.cells.iter().enumerate() {
        let tri = [cell[0], cell[1], cell[2]];
        let position = tie_point(tri.map(|i| frame[i]), tri.map(|i| &heights[i]));
        let mut triangle = tri.map(global);
        triangle.sort_unstable();
        vertices.push(CurveVertex { position, triangle });
        for k in 0..3 {
            let (p, q, opposite) = (tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]);
            let key = if global(p) < global(q) { [p, q] } else { [q, p] };
            by_edge.entry(key).or_default().push((c, opposite));
        }
    }
    let mut edges = Vec::new();
    for (key, users) in by_edge {
        let along = [frame[key[1]][0] - frame[key[0]][0], frame[key[1]][1] - frame[key[0]][1]];
        let normal = primitive2(rot(along));
        let dual = [global(key[0]), global(key[1])];
        match users.as_slice() {
            [(c, opposite)] => {
                let inward = [frame[*opposite][0] - frame[key[0]][0], frame[*opposite][1] - frame[key[0]][1]];
                let sign = (normal[0] * inward[0] + normal[1] * inward[1]).signum();
                edges.push(CurveEdge {
                    kind: EdgeKind::Outer,
                    tail: *c,
                    head: None,
                    direction: [normal[0] * sign, normal[1] * sign],
                    dual,
                });
            }
            [(a, _), (b, _)] => {
                let (tail, head) = ((*a).min(*b), (*a).max(*b));
                let diff = [
                    vertices[head].position[0].clone() - vertices[tail].position[0].clone(),
                    vertices[head].position[1].clone() - vertices[tail].position[1].clone(),
                ];
                let proj = dot2(normal, &diff);
                assert!(!proj.is_zero(), "adjacent cells with coincident dual vertices");
                let direction = if proj.is_positive() { normal } else { [-normal[0], -normal[1]] };
                edges.push(CurveEdge { kind: EdgeKind::Internal, tail, head: Some(head), direction, dual });
            }
            _ => unreachable!("triangulation edge in more than two cells"),
        }
    }
    edges.sort_by_key(|e| e.dual);
    Ok(TropicalPlaneCurve { vertices, edges })
}

impl<S: Scalar> TropicalPlaneCurve<S> {
    pub fn count(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    /// `head = tail + length * direction` for bounded edges.
    pub fn edge_length(&self, e: usize) -> Option<S> {
        let edge = &self.edges[e];
        let head = edge.head?;
        let d = edge.direction;
        let diff = [
            self.vertices[head].position[0].clone() - self.vertices[edge.tail].position[0].clone(),
            self.vertices[head].position[1].clone() - self.vertices[edge.tail].position[1].clone(),
        ];
        Some(dot2(d, &diff) / S::from_i64(d[0] * d[0] + d[1] * d[1]))
    }

    pub fn base(&self, e: usize) -> &[S; 2] {
        &self.vertices[self.edges[e].tail].position
    }

    /// Sum of outgoing primitive directions at every vertex.
    pub fn is_balanced(&self) -> bool {
        let mut sums = vec![[0i64; 2]; self.vertices.len()];
        for e in &self.edges {
            sums[e.tail][0] += e.direction[0];
            sums[e.tail][1] += e.direction[1];
            if let Some(h) = e.head {
                sums[h][0] -= e.direction[0];
                sums[h][1] -= e.direction[1];
            }
        }
        sums.iter().all(|s| *s == [0, 0])
    }

    /// Where `p` sits relative to the closed edge or ray `e`.
    pub fn point_on_edge(&self, e: usize, p: &[S; 2]) -> EdgeLocation {
        let edge = &self.edges[e];
        let base = self.base(e);
        let rel = [p[0].clone() - base[0].clone(), p[1].clone() - base[1].clone()];
        if !dot2(rot(edge.direction), &rel).is_zero() {
            return EdgeLocation::Outside;
        }
        let along = dot2(edge.direction, &rel) / S::from_i64(edge.direction[0].pow(2) + edge.direction[1].pow(2));
        if along.is_negative() {
            return EdgeLocation::Outside;
        }
        if along.is_zero() {
            return EdgeLocation::Vertex;
        }
        match self.edge_length(e) {
            None => EdgeLocation::Interior,
            Some(len) if along < len => EdgeLocation::Interior,
            Some(len) if along == len => EdgeLocation::Vertex,
            Some(_) => EdgeLocation::Outside,
        }
    }

    /// The same curve in coordinates `X' = m X` for a unimodular `m`.
    pub fn transformed(&self, m: &[[i64; 2]; 2]) -> Self {
        let apply_f = |x: &[S; 2]| [dot2(m[0], x), dot2(m[1], x)];
        let apply_i = |d: [i64; 2]| [m[0][0] * d[0] + m[0][1] * d[1], m[1][0] * d[0] + m[1][1] * d[1]];
        TropicalPlaneCurve {
            vertices: self
                .vertices
                .iter()
                .map(|v| CurveVertex { position: apply_f(&v.position), triangle: v.triangle })
                .collect(),
            edges: self.edges.iter().map(|e| CurveEdge { direction: apply_i(e.direction), ..e.clone() }).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn r(v: i64) -> Rat {
        Rat::from_i64(v)
    }

    #[test]
    fn unit_triangle_is_a_tropical_line() {
        let s = RegularSubdivision::from_cells(vec![vec![0, 0], vec![1, 0], vec![0, 1]], vec![vec![0, 1, 2]]);
        let c = dual_plane_curve(&s, &[[0, 0], [1, 0], [0, 1]], &[r(0), r(0), r(0)]).unwrap();
        assert_eq!(c.vertices.len(), 1);
        assert_eq!(c.count(EdgeKind::Internal), 0);
        assert_eq!(c.count(EdgeKind::Outer), 3);
        assert!(c.is_balanced());
        let mut dirs: Vec<[i64; 2]> = c.edges.iter().map(|e| e.direction).collect();
        dirs.sort();
        assert_eq!(dirs, vec![[-1, -1], [0, 1], [1, 0]]);
    }

    #[test]
    fn fat_triangle_is_rejected() {
        let s = RegularSubdivision::from_cells(vec![vec![0, 0], vec![2, 0], vec![0, 1]], vec![vec![0, 1, 2]]);
        let err = dual_plane_curve(&s, &[[0, 0], [2, 0], [0, 1]], &[r(0), r(0), r(0)]).unwrap_err();
        assert!(matches!(err, Error::NotUnimodular));
    }

    #[test]
    fn two_triangles_and_edge_locations() {
        // Square split along its diagonal by heights (0,0,0,1) at (0,0),(1,0),(0,1),(1,1).
        let coords = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        let heights = [r(0), r(0), r(0), r(1)];
        let s = RegularSubdivision::from_configuration(coords.clone(), &heights);
        let frame: Vec<[i64; 2]> = coords.iter().map(|c| [c[0], c[1]]).collect();
        let c = dual_plane_curve(&s, &frame, &heights).unwrap();
        assert_eq!(c.vertices.len(), 2);
        assert_eq!(c.count(EdgeKind::Internal), 1);
        assert_eq!(c.count(EdgeKind::Outer), 4);
        assert!(c.is_balanced());
        let e = c.edges.iter().position(|e| e.kind == EdgeKind::Internal).unwrap();
        let a = c.vertices[c.edges[e].tail].position.clone();
        let b = c.vertices[c.edges[e].head.unwrap()].position.clone();
        let two = r(2);
        let mid = [(a[0].clone() + b[0].clone()) / two.clone(), (a[1].clone() + b[1].clone()) / two];
        assert_eq!(c.point_on_edge(e, &mid), EdgeLocation::Interior);
        assert_eq!(c.point_on_edge(e, &a), EdgeLocation::Vertex);
        assert_eq!(c.point_on_edge(e, &b), EdgeLocation::Vertex);
        let off = [a[0].clone() + r(1), a[1].clone()];
        assert_eq!(c.point_on_edge(e, &off), EdgeLocation::Outside);
    }
}
