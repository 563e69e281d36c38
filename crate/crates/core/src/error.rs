use std::time::Duration;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("edge list contains no edges")]
    EmptyGraph,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("node vector has length {found}, graph has {expected} nodes")]
    LengthMismatch { expected: usize, found: usize },

    #[error("node {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("dense operator would have dimension {dim} (limit {limit}); use the sparse estimates instead")]
    SizeGuard { dim: usize, limit: usize },

    #[error("residual graph still has a leaf-removal core")]
    NotCoreFree,

    #[error("node {0} is already deleted")]
    AlreadyDeleted(usize),

    #[error("power iteration did not converge within {iterations} iterations on a graph with {nodes} nodes and {edges} edges")]
    NoConvergence { iterations: usize, nodes: usize, edges: usize },

    #[error("dense eigenvalue solver did not converge on a {dim}x{dim} matrix")]
    EigenFailure { dim: usize },

    #[error("internal error: produced cover is invalid ({0})")]
    InvalidCover(String),

    #[error("exact solver exceeded its budget after {elapsed:?}")]
    Timeout { elapsed: Duration },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
