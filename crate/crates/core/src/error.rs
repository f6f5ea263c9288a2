use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate moduli parameter: {0}")]
    DegenerateAlpha(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("variable mismatch: [{0}] vs [{1}]")]
    VariableMismatch(String, String),

    #[error("too many variables: {0} (at most 4 are supported)")]
    TooManyVariables(usize),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("derivation {candidate} is not in D(A,m): condition for hyperplane {hyperplane} fails")]
    NotMember { candidate: usize, hyperplane: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
