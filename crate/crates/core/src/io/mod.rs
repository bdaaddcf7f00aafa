//! Serialization of every stage: heights, curves, line records, meshes and
//! graphs. Rationals are written as `"p/q"` strings.

mod curves;
mod heights;
mod mesh;
mod records;

pub use curves::{CurveRecord, CurvesFile, EdgeRecord, VertexRecord};
pub use heights::{HeightEntry, HeightsFile};
pub use mesh::{facet_obj, matrix_market, ObjCounts};
pub use records::{LegRecord, LineRecord};

use crate::scalar::{format_ratio, parse_ratio};
use crate::{Error, Result, Scalar};

/// Written into every output file.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

fn fmt_vec<S: Scalar, const N: usize>(v: &[S; N]) -> [String; N] {
    std::array::from_fn(|k| format_ratio(&v[k]))
}

fn parse_vec<S: Scalar, const N: usize>(v: &[String; N], what: &str) -> Result<[S; N]> {
    let mut out = Vec::with_capacity(N);
    for (k, s) in v.iter().enumerate() {
        out.push(parse_ratio(s).map_err(|e| Error::Parse(format!("{what}[{k}]: {e}")))?);
    }
    Ok(out.try_into().unwrap_or_else(|_| unreachable!()))
}
