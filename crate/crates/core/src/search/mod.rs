//! Enumeration of rigid tropical lines in a facet chart whose four legs
//! land on prescribed edges of the curves at infinity.
//!
//! Legs are numbered `0..4` and leg `j` points along [`RAYS`]`[j]`. A line
//! of type `{ab|cd}` has legs `a, b` at `V1` and `c, d` at `V2`, where `a`
//! is the leg 0 side, and `V2 = V1 + t * delta` with
//! `delta = -(r_a + r_b)` forced by balancing at `V1`.

mod axioms;
mod enumerate;
mod solve;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use axioms::{check_tropical_axioms, check_vertex, AxiomReport, VertexCheck};
pub use enumerate::{enumerate_facet, probe_direction, FacetCensus, TypeAccounting, FAMILY_SAMPLES};
pub use solve::{incidence_system, solve_line, LineOutcome};

use crate::tropical::{EdgeKind, RAYS};
use crate::Error;

/// Number of edges of every quintic curve at infinity.
pub const CURVE_EDGES: usize = 45;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CombinatorialType {
    T12x34,
    T13x24,
    T14x23,
}

impl CombinatorialType {
    pub const ALL: [CombinatorialType; 3] =
        [CombinatorialType::T12x34, CombinatorialType::T13x24, CombinatorialType::T14x23];

    /// Legs at `V1` and at `V2`.
    pub fn pairs(self) -> ([usize; 2], [usize; 2]) {
        match self {
            CombinatorialType::T12x34 => ([0, 1], [2, 3]),
            CombinatorialType::T13x24 => ([0, 2], [1, 3]),
            CombinatorialType::T14x23 => ([0, 3], [1, 2]),
        }
    }

    /// `delta = -(r_a + r_b)` for the legs `a, b` at `V1`.
    pub fn bounded_direction(self) -> [i64; 3] {
        let ([a, b], _) = self.pairs();
        [0, 1, 2].map(|k| -(RAYS[a][k] + RAYS[b][k]))
    }

    pub fn at_second(self, leg: usize) -> bool {
        self.pairs().1.contains(&leg)
    }

    pub fn name(self) -> &'static str {
        match self {
            CombinatorialType::T12x34 => "12|34",
            CombinatorialType::T13x24 => "13|24",
            CombinatorialType::T14x23 => "14|23",
        }
    }
}

impl fmt::Display for CombinatorialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CombinatorialType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        CombinatorialType::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown combinatorial type {s:?}")))
    }
}

impl Serialize for CombinatorialType {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for CombinatorialType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One edge id of `C_{facet, j}` per leg `j`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConstraintTuple {
    pub facet: usize,
    pub edges: [usize; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegIncidence<S> {
    pub leg: usize,
    pub edge: usize,
    pub kind: EdgeKind,
    /// Primitive direction of the landing edge in the curve's frame.
    pub direction: [i64; 2],
    /// `pi_leg` of the leg's vertex.
    pub landing: [S; 2],
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineFlags {
    /// Some leg lands on a curve vertex.
    pub special: bool,
    /// `t <= 0`: not of the combinatorial type `>-<`.
    pub degenerate_type: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalLine<S> {
    pub facet: usize,
    pub ctype: CombinatorialType,
    pub v1: [S; 3],
    pub v2: [S; 3],
    pub t: S,
    /// Indexed by leg.
    pub legs: [LegIncidence<S>; 4],
    pub flags: LineFlags,
}

impl<S: Clone> TropicalLine<S> {
    pub fn tuple(&self) -> ConstraintTuple {
        ConstraintTuple { facet: self.facet, edges: [0, 1, 2, 3].map(|j| self.legs[j].edge) }
    }

    pub fn vertex_of_leg(&self, leg: usize) -> &[S; 3] {
        if self.ctype.at_second(leg) {
            &self.v2
        } else {
            &self.v1
        }
    }

    pub fn is_valid(&self) -> bool {
        !self.flags.special && !self.flags.degenerate_type
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn types_partition_the_legs() {
        for t in CombinatorialType::ALL {
            let (p, q) = t.pairs();
            let mut all = [p[0], p[1], q[0], q[1]];
            all.sort_unstable();
            assert_eq!(all, [0, 1, 2, 3]);
            assert_eq!(t.name().parse::<CombinatorialType>().unwrap(), t);
        }
        assert_eq!(CombinatorialType::T12x34.bounded_direction(), [-1, -1, 0]);
        assert!("12|43".parse::<CombinatorialType>().is_err());
    }
}
