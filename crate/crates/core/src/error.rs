use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular (rank {rank})")]
    SingularMatrix { rank: usize },

    /// The bilinear form has a singular Gram matrix in the chosen basis.
    #[error("bilinear form is degenerate (Gram rank {rank} of {dim})")]
    DegenerateForm { rank: usize, dim: usize },

    #[error("invalid block size: {0}")]
    InvalidBlockSize(String),

    #[error("invalid parameters: {0}")]
    InvalidLambda(String),

    #[error("tensor is not skew-symmetric ({violations} violations)")]
    NotSkew { violations: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),
}
