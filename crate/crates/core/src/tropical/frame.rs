use crate::polytope::{Face, LatticePoint, LatticeSimplexConfig};
use crate::{Result, Scalar};

/// Leg directions `r_1, ..., r_4` of a tropical line in a facet chart.
pub const RAYS: [[i64; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]];

/// Unimodular coordinates on one facet of the simplex.
///
/// With facet vertices `w_{s0} < w_{s1} < w_{s2} < w_{s3}`, the point `m`
/// gets coordinates `y_k = b_{s_k}(m)`, which puts the facet onto
/// `conv{0, 5e1, 5e2, 5e3}`. Leg `j` (0-based) points along `RAYS[j]` and
/// sees the 2-face of the tetrahedron on which `<y, RAYS[j]>` is minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetFrame {
    index: usize,
    face: Face,
    vertices: [usize; 4],
}

impl FacetFrame {
    /// Frame of facet `i` in `1..=5`.
    pub fn new(i: usize) -> Result<Self> {
        let face = Face::facet(i)?;
        let v = face.vertices();
        let vertices = [v[0], v[1], v[2], v[3]];
        Ok(FacetFrame { index: i, face, vertices })
    }

    pub fn all() -> Vec<FacetFrame> {
        (1..=5).map(|i| FacetFrame::new(i).expect("valid facet")).collect()
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn face(&self) -> &Face {
        &self.face
    }

    pub fn coords(&self, m: &LatticePoint) -> [i64; 3] {
        let b = LatticeSimplexConfig::barycentric(m);
        [b[self.vertices[1]], b[self.vertices[2]], b[self.vertices[3]]]
    }

    /// The 2-face reached by leg `j`.
    pub fn leg_face(&self, j: usize) -> Face {
        let dropped = if j < 3 { self.vertices[j + 1] } else { self.vertices[0] };
        Face::new(self.vertices.iter().copied().filter(|&v| v != dropped).collect()).expect("2-face")
    }

    /// Matrix of `pi_j: Z^3 -> Z^2`, whose kernel is `Z r_j`.
    pub fn projection(j: usize) -> [[i64; 3]; 2] {
        match j {
            0 => [[0, 1, 0], [0, 0, 1]],
            1 => [[1, 0, 0], [0, 0, 1]],
            2 => [[1, 0, 0], [0, 1, 0]],
            3 => [[1, 0, -1], [0, 1, -1]],
            _ => panic!("leg index {j} out of range"),
        }
    }

    pub fn project<S: Scalar>(j: usize, v: &[S; 3]) -> [S; 2] {
        let p = Self::projection(j);
        [crate::scalar::dot(&p[0], v), crate::scalar::dot(&p[1], v)]
    }

    pub fn project_int(j: usize, v: &[i64; 3]) -> [i64; 2] {
        let p = Self::projection(j);
        [(0..3).map(|k| p[0][k] * v[k]).sum(), (0..3).map(|k| p[1][k] * v[k]).sum()]
    }

    /// A preimage of `d` under `pi_j`.
    pub fn lift(j: usize, d: [i64; 2]) -> [i64; 3] {
        match j {
            0 => [0, d[0], d[1]],
            1 => [d[0], 0, d[1]],
            2 | 3 => [d[0], d[1], 0],
            _ => panic!("leg index {j} out of range"),
        }
    }

    /// `pi_j^T n`: the functional on `Z^3` that `n` induces through `pi_j`.
    pub fn pullback(j: usize, n: [i64; 2]) -> [i64; 3] {
        let p = Self::projection(j);
        [0, 1, 2].map(|k| n[0] * p[0][k] + n[1] * p[1][k])
    }

    /// Exponent of the monomial `m` in the curve at infinity of leg `j`,
    /// i.e. the coordinates dual to `pi_j`; monomials of one 2-face differ
    /// from `<y(m), Y>` by a term that is constant on the face.
    pub fn face_coords(&self, j: usize, m: &LatticePoint) -> [i64; 2] {
        let y = self.coords(m);
        match j {
            0 => [y[1], y[2]],
            1 => [y[0], y[2]],
            2 | 3 => [y[0], y[1]],
            _ => panic!("leg index {j} out of range"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rays_and_projections() {
        let sum: Vec<i64> = (0..3).map(|k| RAYS.iter().map(|r| r[k]).sum()).collect();
        assert_eq!(sum, vec![0, 0, 0]);
        for (j, ray) in RAYS.iter().enumerate() {
            assert_eq!(FacetFrame::project_int(j, ray), [0, 0]);
            for d in [[1, 0], [0, 1], [2, -3]] {
                assert_eq!(FacetFrame::project_int(j, &FacetFrame::lift(j, d)), d);
            }
        }
    }

    #[test]
    fn facets_sit_in_standard_position() {
        let cfg = LatticeSimplexConfig::get();
        for frame in FacetFrame::all() {
            let pts = frame.face().point_indices();
            for &i in &pts {
                let y = frame.coords(&cfg.points()[i]);
                assert!(y.iter().all(|&c| c >= 0) && y.iter().sum::<i64>() <= 5);
            }
            for (j, ray) in RAYS.iter().enumerate() {
                let face = frame.leg_face(j);
                assert!(frame.face().contains_face(&face));
                for &i in &pts {
                    let m = &cfg.points()[i];
                    let y = frame.coords(m);
                    let along: i64 = (0..3).map(|k| y[k] * ray[k]).sum();
                    let minimal = if j < 3 { 0 } else { -5 };
                    assert_eq!(face.contains_point(m), along == minimal);
                }
            }
        }
    }

    #[test]
    fn face_coords_are_unimodular_on_the_face() {
        let cfg = LatticeSimplexConfig::get();
        for frame in FacetFrame::all() {
            for j in 0..4 {
                let coords: Vec<[i64; 2]> =
                    frame.leg_face(j).point_indices().iter().map(|&i| frame.face_coords(j, &cfg.points()[i])).collect();
                let mut sorted = coords.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), 21);
                assert!(coords.iter().all(|c| c[0] >= 0 && c[1] >= 0 && c[0] + c[1] <= 5));
            }
        }
    }
}
