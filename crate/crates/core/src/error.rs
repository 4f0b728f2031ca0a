use thiserror::Error;

use crate::curve::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid tree:\n{0}")]
    InvalidTree(ValidationReport),
    #[error("malformed tree JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown component {0}")]
    UnknownComponent(String),
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("total degree must be non-negative, got {0}")]
    NegativeDegree(i64),
    #[error("multidegree has {got} entries, tree has {expected} components")]
    LengthMismatch { expected: usize, got: usize },
    #[error("node {node} has {count} small tails, expected exactly one")]
    SmallTailCount { node: String, count: usize },
    #[error("point configuration is empty")]
    EmptyConfig,
    #[error("maximal degree must be at least 1")]
    ZeroDmax,
    #[error("curve is not in the g/2 boundary divisor: it has a central component")]
    NotInDeltaHalf,
    #[error("component {0} is neither central nor semicentral")]
    NotSemicentral(String),
    #[error("internal invariant broken at d = {d}: {what}")]
    Invariant { d: usize, what: String },
    #[error("unsatisfiable generator spec: {0}")]
    Unsatisfiable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
