//! Batch driver for the line census: heights, census, graph analysis,
//! visualization exports and the invariant suite.

pub mod analyze;
pub mod census;
pub mod commands;
pub mod config;
pub mod verify;
pub mod viz;

pub use config::{Provenance, RunConfig, OUT_ENV};
