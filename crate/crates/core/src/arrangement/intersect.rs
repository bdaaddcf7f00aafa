use crate::search::TropicalLine;
use crate::tropical::{EdgeKind, QuinticCurveSet, RAYS};
use crate::Scalar;

// Distances below this are decided exactly; coordinates are small rationals,
// so the float error of the prefilter is many orders of magnitude smaller.
const PREFILTER_TOLERANCE: f64 = 1e-6;

/// A closed segment `{P + s D : 0 <= s <= 1}` or ray `{P + s D : s >= 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece<S> {
    pub origin: [S; 3],
    pub direction: [S; 3],
    pub bounded: bool,
}

type V3<S> = [S; 3];

fn sub<S: Scalar>(a: &V3<S>, b: &V3<S>) -> V3<S> {
    [0, 1, 2].map(|k| a[k].clone() - b[k].clone())
}

fn dot<S: Scalar>(a: &V3<S>, b: &V3<S>) -> S {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

fn cross<S: Scalar>(a: &V3<S>, b: &V3<S>) -> V3<S> {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

fn is_zero<S: Scalar>(v: &V3<S>) -> bool {
    v.iter().all(|x| x.is_zero())
}

fn in_range<S: Scalar>(s: &S, bounded: bool) -> bool {
    !s.is_negative() && (!bounded || *s <= S::one())
}

impl<S: Scalar> Piece<S> {
    /// Exact intersection test in `Q^3`, including collinear overlaps.
    pub fn meets(&self, other: &Piece<S>) -> bool {
        let w = sub(&other.origin, &self.origin);
        let c = cross(&self.direction, &other.direction);
        if !is_zero(&c) {
            if !dot(&w, &c).is_zero() {
                return false;
            }
            let n2 = dot(&c, &c);
            let s = dot(&cross(&w, &other.direction), &c) / n2.clone();
            let u = dot(&cross(&w, &self.direction), &c) / n2;
            return in_range(&s, self.bounded) && in_range(&u, other.bounded);
        }
        if !is_zero(&cross(&w, &self.direction)) {
            return false;
        }
        // Collinear: place `other` on the parameter line of `self`.
        let d2 = dot(&self.direction, &self.direction);
        let s0 = dot(&w, &self.direction) / d2.clone();
        let step = dot(&other.direction, &self.direction) / d2;
        let (lo, hi) = match (other.bounded, step.is_positive()) {
            (true, true) => (Some(s0.clone()), Some(s0 + step)),
            (true, false) => (Some(s0.clone() + step), Some(s0)),
            (false, true) => (Some(s0), None),
            (false, false) => (None, Some(s0)),
        };
        let self_hi = self.bounded.then(S::one);
        let starts_before_end = match (&lo, &self_hi) {
            (Some(l), Some(h)) => l <= h,
            _ => true,
        };
        let ends_after_start = hi.is_none_or(|h| !h.is_negative());
        starts_before_end && ends_after_start
    }
}

#[derive(Clone, Copy, Debug)]
struct Approx {
    origin: [f64; 3],
    direction: [f64; 3],
}

fn fsub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn fdot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn fcross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

impl Approx {
    fn new(origin: [f64; 3], direction: [f64; 3]) -> Self {
        let n = fdot(direction, direction).sqrt();
        Approx { origin, direction: direction.map(|x| x / n) }
    }

    // Whether the supporting lines are certainly apart. Directions are unit
    // multiples of small integer vectors, so distinct ones are far from
    // parallel.
    fn apart(&self, other: &Approx) -> bool {
        let w = fsub(other.origin, self.origin);
        let c = fcross(self.direction, other.direction);
        let c_len = fdot(c, c).sqrt();
        if c_len > 1e-9 {
            return fdot(w, c).abs() > PREFILTER_TOLERANCE * c_len;
        }
        let wd = fcross(w, self.direction);
        fdot(wd, wd).sqrt() > PREFILTER_TOLERANCE
    }
}

/// The closed image of a line in its facet chart: the bounded edge and four
/// closed legs.
#[derive(Clone, Debug)]
pub struct LineImage<S> {
    pub pieces: Vec<Piece<S>>,
    approx: Vec<Approx>,
}

impl<S: Scalar> LineImage<S> {
    pub fn new(line: &TropicalLine<S>) -> Self {
        let mut pieces = vec![Piece { origin: line.v1.clone(), direction: sub(&line.v2, &line.v1), bounded: true }];
        for (j, ray) in RAYS.iter().enumerate() {
            pieces.push(Piece {
                origin: line.vertex_of_leg(j).clone(),
                direction: ray.map(S::from_i64),
                bounded: false,
            });
        }
        let approx = pieces
            .iter()
            .map(|p| {
                Approx::new(p.origin.clone().map(|x| x.to_f64_lossy()), p.direction.clone().map(|x| x.to_f64_lossy()))
            })
            .collect();
        LineImage { pieces, approx }
    }

    /// Same as [`same_facet_intersect`], with a float prefilter that only
    /// discards pairs whose supporting lines are far apart.
    pub fn meets(&self, other: &LineImage<S>) -> bool {
        (0..self.pieces.len()).any(|i| {
            (0..other.pieces.len())
                .any(|k| !self.approx[i].apart(&other.approx[k]) && self.pieces[i].meets(&other.pieces[k]))
        })
    }

    pub fn meets_exact(&self, other: &LineImage<S>) -> bool {
        self.pieces.iter().any(|p| other.pieces.iter().any(|q| p.meets(q)))
    }
}

/// Whether the closed images of two lines of the same facet intersect.
pub fn same_facet_intersect<S: Scalar>(a: &TropicalLine<S>, b: &TropicalLine<S>) -> bool {
    LineImage::new(a).meets_exact(&LineImage::new(b))
}

/// Whether lines of two facets meet on a shared 2-face: some pair of legs
/// lands on the same 2-face at the same point, or on the same outer edge of
/// its curve, whose tails then overlap.
pub fn cross_facet_intersect<S: Scalar>(a: &TropicalLine<S>, b: &TropicalLine<S>, curves: &QuinticCurveSet<S>) -> bool {
    (0..4).any(|ja| {
        let ia = curves.get(a.facet, ja);
        (0..4).any(|jb| {
            let ib = curves.get(b.facet, jb);
            if ia.face != ib.face {
                return false;
            }
            let ea = &ia.curve.edges[a.legs[ja].edge];
            let eb = &ib.curve.edges[b.legs[jb].edge];
            let same_ray = ea.kind == EdgeKind::Outer && eb.kind == EdgeKind::Outer && ea.dual == eb.dual;
            same_ray || ia.to_face_point(&a.legs[ja].landing) == ib.to_face_point(&b.legs[jb].landing)
        })
    })
}
