use std::collections::BTreeMap;

use rayon::prelude::*;

use super::curve::tie_point;
use super::{dual_plane_curve, FacetFrame, TropicalPlaneCurve};
use crate::polytope::{induced_subdivision, Face, HeightFunction, LatticeSimplexConfig, RegularSubdivision};
use crate::{Result, Scalar};

/// The curve at infinity of leg `leg` in facet `facet`.
#[derive(Clone, Debug)]
pub struct CurveInstance<S> {
    pub facet: usize,
    pub leg: usize,
    pub face: Face,
    pub curve: TropicalPlaneCurve<S>,
    /// `X_face = to_face * X` maps this instance's coordinates to those of
    /// the 2-face's own frame, where the exponent of `m` is
    /// `Face::local_coords(m)`.
    pub to_face: [[i64; 2]; 2],
}

/// A 2-face with the `(facet, leg)` of its two instances.
pub type FacePairing = (Face, (usize, usize), (usize, usize));

/// All 20 curve instances, four per facet, realizing the ten 2-face curves.
#[derive(Clone, Debug)]
pub struct QuinticCurveSet<S> {
    instances: Vec<CurveInstance<S>>,
    face_curves: BTreeMap<Face, TropicalPlaneCurve<S>>,
}

// Linear part `A` of the affine map `face_coords = A local_coords + c`.
fn frame_matrix(frame: &FacetFrame, leg: usize, face: &Face) -> [[i64; 2]; 2] {
    let w = LatticeSimplexConfig::get().vertices();
    let v = face.vertices();
    let c = frame.face_coords(leg, &w[v[0]]);
    let e1 = frame.face_coords(leg, &w[v[1]]);
    let e2 = frame.face_coords(leg, &w[v[2]]);
    let col = |e: [i64; 2]| [(e[0] - c[0]) / 5, (e[1] - c[1]) / 5];
    let (a, b) = (col(e1), col(e2));
    [[a[0], b[0]], [a[1], b[1]]]
}

fn transpose(m: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [[m[0][0], m[1][0]], [m[0][1], m[1][1]]]
}

fn face_curve<S: Scalar>(
    s: &RegularSubdivision,
    h: &HeightFunction<S>,
    coords: impl Fn(usize) -> [i64; 2],
) -> Result<TropicalPlaneCurve<S>> {
    let frame: Vec<[i64; 2]> = s.points.iter().map(|&g| coords(g)).collect();
    let heights: Vec<S> = s.points.iter().map(|&g| h.at_index(g).clone()).collect();
    dual_plane_curve(s, &frame, &heights)
}

pub fn build_curve_set<S: Scalar>(h: &HeightFunction<S>) -> Result<QuinticCurveSet<S>> {
    let cfg = LatticeSimplexConfig::get();
    let faces = Face::two_faces();
    let subdivisions: Vec<RegularSubdivision> = faces
        .par_iter()
        .map(|f| {
            let s = induced_subdivision(h, f)?;
            s.require_unimodular()?;
            Ok(s)
        })
        .collect::<Result<_>>()?;
    let mut face_curves = BTreeMap::new();
    for (f, s) in faces.iter().zip(&subdivisions) {
        let c = face_curve(s, h, |g| {
            let l = f.local_coords(&cfg.points()[g]);
            [l[0], l[1]]
        })?;
        face_curves.insert(f.clone(), c);
    }
    let jobs: Vec<(FacetFrame, usize)> =
        FacetFrame::all().into_iter().flat_map(|fr| (0..4).map(move |j| (fr.clone(), j))).collect();
    let instances = jobs
        .par_iter()
        .map(|(frame, j)| {
            let face = frame.leg_face(*j);
            let idx = faces.iter().position(|f| *f == face).expect("2-face");
            let curve = face_curve(&subdivisions[idx], h, |g| frame.face_coords(*j, &cfg.points()[g]))?;
            let to_face = transpose(frame_matrix(frame, *j, &face));
            Ok(CurveInstance { facet: frame.index(), leg: *j, face, curve, to_face })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QuinticCurveSet { instances, face_curves })
}

impl<S: Scalar> QuinticCurveSet<S> {
    /// `facet` in `1..=5`, `leg` in `0..4`.
    pub fn get(&self, facet: usize, leg: usize) -> &CurveInstance<S> {
        &self.instances[(facet - 1) * 4 + leg]
    }

    pub fn instances(&self) -> &[CurveInstance<S>] {
        &self.instances
    }

    /// The curve of a 2-face in its own frame.
    pub fn face_curve(&self, face: &Face) -> Option<&TropicalPlaneCurve<S>> {
        self.face_curves.get(face)
    }

    /// The other `(facet, leg)` realizing the same 2-face.
    pub fn partner(&self, facet: usize, leg: usize) -> (usize, usize) {
        let face = &self.get(facet, leg).face;
        self.instances
            .iter()
            .find(|c| &c.face == face && (c.facet, c.leg) != (facet, leg))
            .map(|c| (c.facet, c.leg))
            .expect("every 2-face lies in two facets")
    }

    /// For each 2-face, its two instances.
    pub fn pairing(&self) -> Vec<FacePairing> {
        let mut out = Vec::new();
        for face in Face::two_faces() {
            let both: Vec<(usize, usize)> =
                self.instances.iter().filter(|c| c.face == face).map(|c| (c.facet, c.leg)).collect();
            out.push((face, both[0], both[1]));
        }
        out
    }
}

impl<S: Scalar> CurveInstance<S> {
    /// Vertex positions for other heights on the same triangulation, which
    /// are linear in the heights. `heights` is indexed by global point.
    pub fn vertex_positions(&self, heights: &[S]) -> Result<Vec<[S; 2]>> {
        let cfg = LatticeSimplexConfig::get();
        let frame = FacetFrame::new(self.facet)?;
        Ok(self
            .curve
            .vertices
            .iter()
            .map(|v| {
                tie_point(
                    v.triangle.map(|g| frame.face_coords(self.leg, &cfg.points()[g])),
                    v.triangle.map(|g| &heights[g]),
                )
            })
            .collect())
    }

    /// A point of this instance's plane in the 2-face frame.
    pub fn to_face_point(&self, x: &[S; 2]) -> [S; 2] {
        let m = self.to_face;
        [crate::scalar::dot(&m[0], x), crate::scalar::dot(&m[1], x)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::make_heights;
    use crate::tropical::EdgeKind;
    use crate::Rat;

    #[test]
    fn symmetric_curves_are_smooth_quintics() {
        let set = build_curve_set(&HeightFunction::<Rat>::symmetric()).unwrap();
        assert_eq!(set.instances().len(), 20);
        for c in set.instances() {
            assert_eq!(c.curve.vertices.len(), 25);
            assert_eq!(c.curve.edges.len(), 45);
            assert_eq!(c.curve.count(EdgeKind::Internal), 30);
            assert_eq!(c.curve.count(EdgeKind::Outer), 15);
            assert!(c.curve.is_balanced());
        }
        assert_eq!(set.pairing().len(), 10);
    }

    #[test]
    fn instances_agree_in_the_face_frame() {
        let h = make_heights::<Rat>(9, &Rat::from_frac(1, 1000)).unwrap();
        let set = build_curve_set(&h).unwrap();
        for inst in set.instances() {
            let m = inst.to_face;
            assert_eq!((m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs(), 1);
            let mapped = inst.curve.transformed(&m);
            assert_eq!(&mapped, set.face_curve(&inst.face).unwrap());
            let (f, l) = set.partner(inst.facet, inst.leg);
            assert_eq!(set.partner(f, l), (inst.facet, inst.leg));
        }
    }

    #[test]
    fn dual_positions_minimize_exactly_on_their_triangle() {
        let h = make_heights::<Rat>(4, &Rat::from_frac(1, 1000)).unwrap();
        let set = build_curve_set(&h).unwrap();
        let cfg = LatticeSimplexConfig::get();
        for (face, curve) in &set.face_curves {
            for v in &curve.vertices {
                let val = |g: usize| {
                    let l = face.local_coords(&cfg.points()[g]);
                    h.at_index(g).clone() + crate::scalar::dot(&l, &v.position)
                };
                let best = face.point_indices().into_iter().map(val).min().unwrap();
                let attained: Vec<usize> = face.point_indices().into_iter().filter(|&g| val(g) == best).collect();
                assert_eq!(attained, v.triangle.to_vec());
            }
        }
    }
}
