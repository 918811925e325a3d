use thiserror::Error;

/// Errors shared across the toolkit.
///
/// Structural validators (paths, cycles, tilings) have their own violation
/// enums next to the types they check; this enum covers construction,
/// parsing, and precondition failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("edge must have three distinct vertices, got {0:?}")]
    DegenerateEdge([usize; 3]),

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("duplicate edge {0:?}")]
    DuplicateEdge([usize; 3]),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("vertex count {n} exceeds solver mask width {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
