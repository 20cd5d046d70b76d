use thiserror::Error;

/// Errors produced by the factorization, certification and I/O layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not symmetric at ({row}, {col}): |a_ij - a_ji| = {diff:e}")]
    Asymmetric { row: usize, col: usize, diff: f64 },

    #[error("not a permutation of 0..{n}")]
    InvalidPermutation { n: usize },

    #[error("invalid unit lower triangular factor: {0}")]
    InvalidFactor(String),

    #[error("tridiagonal factor is singular at pivot {index}")]
    Singular { index: usize },

    #[error("growth factor is undefined for the zero matrix")]
    UndefinedGrowth,

    #[error("{0}")]
    Domain(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
