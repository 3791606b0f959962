use thiserror::Error;

use crate::tree::VertexId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cycle detected through vertex {0}")]
    Cycle(VertexId),
    #[error("vertex {0} is not connected to the root")]
    Disconnected(VertexId),
    #[error("vertex {0} has more than one parent")]
    DuplicateParent(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {ancestor} is not an ancestor of {vertex}")]
    NotAncestor { ancestor: VertexId, vertex: VertexId },
    #[error("exponent must lie in [1, inf], got {0}")]
    InvalidExponent(String),
    #[error("weight {name}({vertex}) = {value} must be positive and finite")]
    InvalidWeight {
        name: &'static str,
        vertex: VertexId,
        value: f64,
    },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("invalid level grouping: {0}")]
    InvalidGrouping(String),
    #[error("level band starting at depth {0} contains no vertices")]
    EmptyBand(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("size cap exceeded: {what} would reach {size}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("exponent regime violation: {0}")]
    Regime(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no convergence after {iterations} iterations (relative gap {gap:e})")]
    NoConvergence { iterations: usize, gap: f64 },
    #[error("linear program failed: {0}")]
    LinearProgram(String),
}

pub type Result<T> = std::result::Result<T, Error>;
