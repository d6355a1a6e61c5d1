use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) has zero capacity")]
    ZeroCapacity { u: Vertex, v: Vertex },

    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),

    #[error("vertex sets overlap at {0}")]
    OverlappingSets(Vertex),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} is limited to {limit}, got {actual}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("demand {demand} at vertex {vertex} exceeds threshold {c}")]
    DemandExceedsThreshold { vertex: Vertex, demand: u32, c: u32 },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
