//! Plane tropical quintic curves at infinity and the facet charts in which
//! tropical lines are searched.

mod curve;
mod curve_set;
mod frame;

pub use curve::{dual_plane_curve, CurveEdge, CurveVertex, EdgeKind, EdgeLocation, TropicalPlaneCurve};
pub use curve_set::{build_curve_set, CurveInstance, FacePairing, QuinticCurveSet};
pub use frame::{FacetFrame, RAYS};
