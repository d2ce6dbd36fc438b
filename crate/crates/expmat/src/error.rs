use crate::matrix::TriangleViolation;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension {n} is too small (minimum {min})")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("expected {expected} entries for an {n}x{n} matrix, got {got}")]
    WrongEntryCount { n: usize, expected: usize, got: usize },
    #[error("row {} has {got} entries, expected {expected}", row + 1)]
    RaggedRow {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("nonzero diagonal entry at ({}, {})", row + 1, row + 1)]
    NonzeroDiagonal { row: usize },
    #[error("not an exponent matrix: {0}")]
    NotExponent(TriangleViolation),
    #[error("index set must be a nonempty proper subset of 1..={n}")]
    ImproperIndexSet { n: usize },
    #[error("index {} out of range 1..={n}", index + 1)]
    IndexOutOfRange { index: usize, n: usize },
    #[error("indices must be distinct")]
    IndicesNotDistinct,
    #[error("row {} is zero", row + 1)]
    ZeroRow { row: usize },
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("images do not form a permutation of 1..={n}")]
    InvalidPermutation { n: usize },
    #[error("matrices have different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("search budget of {limit} nodes exhausted")]
    BudgetExceeded { limit: u64 },
    #[error("power must be at least 1")]
    ZeroPower,
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
