//! Error type shared by the whole crate.
//!
//! Row and column numbers carried by errors are 1-based.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Operational failures. Bounds that merely do not apply to a matrix are
/// not errors; they are reported through [`crate::Inapplicable`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must have at least one row")]
    Empty,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero diagonal entry in row {0}")]
    ZeroDiagonal(usize),
    #[error("entry {index} of d is {value}, outside [0, 1]")]
    Domain { index: usize, value: f64 },
    #[error("dimension {n} is below the minimum of {min}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("dimension {n} exceeds the maximum of {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("no complementary basis yields a solution")]
    NoSolution,
    #[error("bound {0} is not applicable")]
    InapplicableBound(crate::Theorem),
    #[error("sweep grid must have at least 2 points, got {0}")]
    InvalidGrid(usize),
    #[error("no epsilon-parameterized bound applies to this matrix")]
    NoParameterizedBound,
    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),
}
