use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid perturbation magnitude {0}: must be a nonnegative multiple of 1/1000000")]
    InvalidMagnitude(String),

    #[error("invalid face: {0}")]
    InvalidFace(String),

    #[error("degenerate heights on face {face}: {detail}")]
    DegenerateHeights { face: String, detail: String },

    #[error("subdivision is not a triangulation")]
    NotATriangulation,

    #[error("triangulation is not unimodular")]
    NotUnimodular,

    #[error("half-spaces do not bound a polytope")]
    Unbounded,

    #[error("line is not rigid: the Čech matrix is singular")]
    NotRigid,

    #[error("constraint plane of leg {leg} does not contain the leg direction")]
    PlaneMissingLegDirection { leg: usize },

    #[error("component of size {size} exceeds exact search limit {limit}")]
    LimitExceeded { size: usize, limit: usize },

    #[error("exact arithmetic bound exceeded: {0}")]
    Overflow(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
