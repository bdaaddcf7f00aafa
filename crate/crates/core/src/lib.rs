//! Tropical lines on a perturbed tropical quintic threefold.
//!
//! The pipeline: heights on the boundary lattice points of the quintic's
//! Newton polytope ([`polytope`]) induce a triangulation whose 2-faces are
//! dual to plane tropical quintic curves ([`tropical`]); legs landing on
//! those curves pin down rigid tropical lines ([`search`]); each line gets a
//! lattice-theoretic multiplicity ([`multiplicity`]); lines are then compared
//! for intersection ([`arrangement`]). [`io`] serializes every stage.

pub mod arrangement;
pub mod error;
pub mod io;
pub mod linalg;
pub mod multiplicity;
pub mod polytope;
pub mod scalar;
pub mod search;
pub mod tropical;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary precision rationals; the scalar used by the census.
pub type Rat = num_rational::BigRational;

pub type Heights = polytope::HeightFunction<Rat>;
