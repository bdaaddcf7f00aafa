//! The Newton polytope of the quintic, height functions on its boundary
//! lattice points, the regular subdivisions they induce, and the dual
//! polytope cut out by the heights.

mod dual;
mod heights;
mod subdivision;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

pub use dual::{dual_polytope, halfspace_vertices, DualPolytope};
pub use heights::{make_heights, phi0, phi1, HeightFunction, PERTURBATION_DENOMINATOR};
pub use subdivision::{
    induced_subdivision, is_unimodular, lower_hull, restrict_to_face, LowerHull, RegularSubdivision,
};

use crate::{Error, Result};

/// Degree of the hypersurface; the simplex is the `DEGREE`-fold dilate.
pub const DEGREE: i64 = 5;

pub type LatticePoint = [i64; 4];

/// The simplex `conv{0, 5e1, ..., 5e4} - (1,1,1,1)` and its boundary lattice
/// points, in lexicographic order.
#[derive(Debug)]
pub struct LatticeSimplexConfig {
    vertices: [LatticePoint; 5],
    points: Vec<LatticePoint>,
    index: HashMap<LatticePoint, usize>,
}

impl LatticeSimplexConfig {
    fn build() -> Self {
        let mut vertices = [[-1; 4]; 5];
        for (k, v) in vertices.iter_mut().enumerate().skip(1) {
            v[k - 1] = DEGREE - 1;
        }
        let mut points = Vec::new();
        let range = -1..=DEGREE - 1;
        for a in range.clone() {
            for b in range.clone() {
                for c in range.clone() {
                    for d in range.clone() {
                        let m = [a, b, c, d];
                        if a + b + c + d <= 1 && m != [0, 0, 0, 0] {
                            points.push(m);
                        }
                    }
                }
            }
        }
        let index = points.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        LatticeSimplexConfig { vertices, points, index }
    }

    /// Shared instance.
    pub fn get() -> &'static LatticeSimplexConfig {
        static CONFIG: OnceLock<LatticeSimplexConfig> = OnceLock::new();
        CONFIG.get_or_init(LatticeSimplexConfig::build)
    }

    /// Vertex `0` is `(-1,-1,-1,-1)`; vertex `k >= 1` is `5 e_k - (1,1,1,1)`.
    pub fn vertices(&self) -> &[LatticePoint; 5] {
        &self.vertices
    }

    /// Lattice points of the boundary.
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn index_of(&self, m: &LatticePoint) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Integer barycentric coordinates `b` with `m = sum b_k w_k / 5`,
    /// `b_k >= 0`, `sum b_k = 5`.
    pub fn barycentric(m: &LatticePoint) -> [i64; 5] {
        [1 - m.iter().sum::<i64>(), m[0] + 1, m[1] + 1, m[2] + 1, m[3] + 1]
    }

    pub fn from_barycentric(b: &[i64; 5]) -> LatticePoint {
        [b[1] - 1, b[2] - 1, b[3] - 1, b[4] - 1]
    }
}

/// A proper face of the simplex, named by the simplex vertices it contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    vertices: Vec<usize>,
}

impl Face {
    pub fn new(mut vertices: Vec<usize>) -> Result<Face> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() || vertices.len() > 4 || vertices.iter().any(|&v| v > 4) {
            return Err(Error::InvalidFace(format!("{vertices:?}")));
        }
        Ok(Face { vertices })
    }

    /// Facet `i` in `1..=5`: for `i <= 4` the facet `x_i = -1`, opposite
    /// vertex `i`; facet 5 is `x_1 + x_2 + x_3 + x_4 = 1`, opposite vertex 0.
    pub fn facet(i: usize) -> Result<Face> {
        let opposite = match i {
            1..=4 => i,
            5 => 0,
            _ => return Err(Error::InvalidFace(format!("facet index {i}"))),
        };
        Face::new((0..5).filter(|&v| v != opposite).collect())
    }

    /// All ten 2-faces, in lexicographic order of their vertex triples.
    pub fn two_faces() -> Vec<Face> {
        let mut out = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    out.push(Face { vertices: vec![a, b, c] });
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn contains_face(&self, other: &Face) -> bool {
        other.vertices.iter().all(|v| self.vertices.contains(v))
    }

    pub fn contains_point(&self, m: &LatticePoint) -> bool {
        let b = LatticeSimplexConfig::barycentric(m);
        (0..5).all(|k| b[k] == 0 || self.vertices.contains(&k))
    }

    /// Boundary point indices lying on this face.
    pub fn point_indices(&self) -> Vec<usize> {
        let cfg = LatticeSimplexConfig::get();
        (0..cfg.points().len()).filter(|&i| self.contains_point(&cfg.points()[i])).collect()
    }

    /// Unimodular affine coordinates on the face: barycentric coordinates of
    /// all vertices but the first.
    pub fn local_coords(&self, m: &LatticePoint) -> Vec<i64> {
        let b = LatticeSimplexConfig::barycentric(m);
        self.vertices[1..].iter().map(|&k| b[k]).collect()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "conv{{w{}}}", names.join(",w"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_points() {
        let cfg = LatticeSimplexConfig::get();
        // 126 lattice points in the 5-dilated 4-simplex, one interior.
        assert_eq!(cfg.points().len(), 125);
        for m in cfg.points() {
            let b = LatticeSimplexConfig::barycentric(m);
            assert!(b.iter().all(|&x| x >= 0));
            assert!(b.contains(&0));
            assert_eq!(LatticeSimplexConfig::from_barycentric(&b), *m);
        }
        for v in cfg.vertices() {
            assert!(cfg.index_of(v).is_some());
        }
    }

    #[test]
    fn face_counts() {
        for i in 1..=5 {
            let f = Face::facet(i).unwrap();
            assert_eq!(f.dim(), 3);
            assert_eq!(f.point_indices().len(), 56);
        }
        let twos = Face::two_faces();
        assert_eq!(twos.len(), 10);
        for f in &twos {
            assert_eq!(f.point_indices().len(), 21);
            let containing = (1..=5).filter(|&i| Face::facet(i).unwrap().contains_face(f)).count();
            assert_eq!(containing, 2);
        }
        assert!(Face::facet(6).is_err());
        assert!(Face::new(vec![]).is_err());
    }

    #[test]
    fn facet_equations() {
        let cfg = LatticeSimplexConfig::get();
        let f1 = Face::facet(1).unwrap();
        let f5 = Face::facet(5).unwrap();
        for m in cfg.points() {
            assert_eq!(f1.contains_point(m), m[0] == -1);
            assert_eq!(f5.contains_point(m), m.iter().sum::<i64>() == 1);
        }
    }
}
