use serde::{Deserialize, Serialize};

use super::{fmt_vec, parse_vec};
use crate::multiplicity::{is_admissible, multiplicity, planes_of};
use crate::scalar::{format_ratio, parse_ratio};
use crate::search::{CombinatorialType, LegIncidence, LineFlags, TropicalLine};
use crate::tropical::{EdgeKind, QuinticCurveSet, RAYS};
use crate::{Error, Result, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegRecord {
    pub dir: [i64; 3],
    /// Leg `j` lands on the curve `C_{facet, j}`.
    pub curve: usize,
    /// Vertices of the 2-face carrying that curve.
    pub face: Vec<usize>,
    pub edge: usize,
    pub kind: EdgeKind,
    pub edge_dir: [i64; 2],
    pub landing: [String; 2],
    /// The dual triangulation edge, in global point indices.
    pub global_edge: [usize; 2],
    /// Landing point in the 2-face's own frame.
    pub face_landing: [String; 2],
}

/// One line of the census as a JSONL record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRecord {
    pub facet: usize,
    #[serde(rename = "type")]
    pub ctype: CombinatorialType,
    #[serde(rename = "V1")]
    pub v1: [String; 3],
    #[serde(rename = "V2")]
    pub v2: [String; 3],
    pub t: String,
    pub legs: Vec<LegRecord>,
    pub flags: LineFlags,
    pub mult: u64,
    pub topology: String,
    pub admissible: bool,
}

impl LineRecord {
    pub fn new<S: Scalar>(line: &TropicalLine<S>, curves: &QuinticCurveSet<S>) -> Result<Self> {
        let m = multiplicity(line, &planes_of(line))?;
        let legs = line
            .legs
            .iter()
            .map(|l| {
                let inst = curves.get(line.facet, l.leg);
                LegRecord {
                    dir: RAYS[l.leg],
                    curve: l.leg,
                    face: inst.face.vertices().to_vec(),
                    edge: l.edge,
                    kind: l.kind,
                    edge_dir: l.direction,
                    landing: fmt_vec(&l.landing),
                    global_edge: inst.curve.edges[l.edge].dual,
                    face_landing: fmt_vec(&inst.to_face_point(&l.landing)),
                }
            })
            .collect();
        Ok(LineRecord {
            facet: line.facet,
            ctype: line.ctype,
            v1: fmt_vec(&line.v1),
            v2: fmt_vec(&line.v2),
            t: format_ratio(&line.t),
            legs,
            flags: line.flags,
            mult: m.value,
            topology: m.topology.to_string(),
            admissible: is_admissible(line),
        })
    }

    /// The line this record describes. Checks the shape of the record and
    /// that `V2 = V1 + t delta`.
    pub fn line<S: Scalar>(&self) -> Result<TropicalLine<S>> {
        if self.legs.len() != 4 {
            return Err(Error::Parse(format!("expected 4 legs, got {}", self.legs.len())));
        }
        let v1: [S; 3] = parse_vec(&self.v1, "V1")?;
        let v2: [S; 3] = parse_vec(&self.v2, "V2")?;
        let t: S = parse_ratio(&self.t).map_err(|e| Error::Parse(format!("t: {e}")))?;
        let delta = self.ctype.bounded_direction();
        if (0..3).any(|k| v2[k] != v1[k].clone() + t.clone() * S::from_i64(delta[k])) {
            return Err(Error::Parse("V2 is not V1 + t * delta".into()));
        }
        let mut legs = Vec::with_capacity(4);
        for (j, l) in self.legs.iter().enumerate() {
            if l.curve != j || l.dir != RAYS[j] {
                return Err(Error::Parse(format!("legs[{j}]: leg out of order")));
            }
            legs.push(LegIncidence {
                leg: j,
                edge: l.edge,
                kind: l.kind,
                direction: l.edge_dir,
                landing: parse_vec(&l.landing, &format!("legs[{j}].landing"))?,
            });
        }
        Ok(TropicalLine {
            facet: self.facet,
            ctype: self.ctype,
            v1,
            v2,
            t,
            legs: legs.try_into().unwrap_or_else(|_| unreachable!()),
            flags: self.flags,
        })
    }

    /// Whether every leg references its curve edge consistently.
    pub fn matches_curves<S: Scalar>(&self, curves: &QuinticCurveSet<S>) -> bool {
        (1..=5).contains(&self.facet)
            && self.legs.len() == 4
            && self.legs.iter().enumerate().all(|(j, l)| {
                let inst = curves.get(self.facet, j);
                inst.curve.edges.get(l.edge).is_some_and(|e| {
                    e.kind == l.kind
                        && e.direction == l.edge_dir
                        && e.dual == l.global_edge
                        && inst.face.vertices() == l.face
                })
            })
    }
}
