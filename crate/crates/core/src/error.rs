use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A malformed record; `record` is 1-based.
    #[error("record {record}: {message}")]
    Parse { record: usize, message: String },

    #[error("record {record}: self-loop is not allowed")]
    SelfLoop { record: usize },

    #[error("record {record}: duplicate edge (unordered pair already present)")]
    DuplicateEdge { record: usize },

    #[error("vertex {0} is not a pendant vertex")]
    NotPendant(VertexId),

    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexId),

    #[error("edge {0}: endpoints share a common neighbor")]
    CommonNeighbor(usize),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("non-finite value at position {0}")]
    NonFinite(usize),

    #[error("matrix market line {line}: {message}")]
    MatrixMarket { line: usize, message: String },

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
