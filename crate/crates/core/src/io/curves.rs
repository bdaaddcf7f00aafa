use serde::{Deserialize, Serialize};

use super::{fmt_vec, ARTIFACT_VERSION};
use crate::polytope::HeightFunction;
use crate::scalar::format_ratio;
use crate::tropical::{CurveInstance, EdgeKind, QuinticCurveSet};
use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub position: [String; 2],
    pub triangle: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub kind: EdgeKind,
    pub tail: usize,
    pub head: Option<usize>,
    pub direction: [i64; 2],
    pub dual: [usize; 2],
}

/// One curve at infinity `C_{facet, leg}` in its own plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub facet: usize,
    pub leg: usize,
    pub face: Vec<usize>,
    pub to_face: [[i64; 2]; 2],
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvesFile {
    pub seed: u64,
    pub magnitude: String,
    pub version: String,
    pub curves: Vec<CurveRecord>,
}

impl CurveRecord {
    pub fn new<S: Scalar>(inst: &CurveInstance<S>) -> Self {
        CurveRecord {
            facet: inst.facet,
            leg: inst.leg,
            face: inst.face.vertices().to_vec(),
            to_face: inst.to_face,
            vertices: inst
                .curve
                .vertices
                .iter()
                .map(|v| VertexRecord { position: fmt_vec(&v.position), triangle: v.triangle })
                .collect(),
            edges: inst
                .curve
                .edges
                .iter()
                .map(|e| EdgeRecord { kind: e.kind, tail: e.tail, head: e.head, direction: e.direction, dual: e.dual })
                .collect(),
        }
    }
}

impl CurvesFile {
    pub fn new<S: Scalar>(h: &HeightFunction<S>, curves: &QuinticCurveSet<S>) -> Self {
        CurvesFile {
            seed: h.seed,
            magnitude: format_ratio(&h.magnitude),
            version: ARTIFACT_VERSION.to_string(),
            curves: curves.instances().iter().map(CurveRecord::new).collect(),
        }
    }
}
