use thiserror::Error;

/// Errors produced by instance handling and the solvers built on top of it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EccError {
    #[error("parse error: {message}, line {line}")]
    Parse { line: usize, message: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("unknown edge id {0}")]
    UnknownEdge(usize),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two surviving edges of different colors share a node.
    #[error("cover violation: edges {first} and {second} conflict at node {node}")]
    CoverViolation {
        node: usize,
        first: usize,
        second: usize,
    },

    #[error("LP solver failure: {0}")]
    Solver(String),

    #[error("LP is infeasible")]
    Infeasible,

    #[error("LP is unbounded")]
    Unbounded,

    #[error("no convergence after {iterations} iterations (last gap/value {last})")]
    NoConvergence { iterations: usize, last: f64 },

    #[error("corrupted fractional solution: {0}")]
    CorruptedFractional(String),

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, EccError>;
