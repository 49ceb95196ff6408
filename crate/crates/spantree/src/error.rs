//! Error type shared by all modules.

use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("envelope exceeded: {0}")]
    EnvelopeExceeded(String),

    #[error("graph is not distance-hereditary")]
    NotDistanceHereditary,

    #[error("no value for variable {0}")]
    MissingCoordinate(VertexId),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn envelope(msg: impl Into<String>) -> Self {
        Error::EnvelopeExceeded(msg.into())
    }
}
