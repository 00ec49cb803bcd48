use thiserror::Error;

/// Errors from matrix and ice-quiver operations.
///
/// Vertex and row indices are 0-based; `Display` prints them 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vertex {} out of range (quiver has {n} mutable vertices)", .vertex + 1)]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid vertex set: {0}")]
    InvalidVertexSet(String),
    #[error("matrix is not skew-symmetric at ({}, {})", .row + 1, .col + 1)]
    NotSkewSymmetric { row: usize, col: usize },
    #[error("malformed matrix: {0}")]
    Shape(String),
    #[error("frozen column of vertex {} has mixed signs", .vertex + 1)]
    SignCoherenceViolation { vertex: usize },
    #[error("integer overflow in matrix entry")]
    Overflow,
    #[error("quiver with {n} vertices exceeds the bound of {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Errors from reading or writing the structured text documents.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}
