use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("form is degenerate")]
    Degenerate,
    #[error("empty input")]
    Empty,
    #[error("odd diagonal entry {value} at position {index} in even mode")]
    OddDiagonal { index: usize, value: i128 },
    #[error("value does not fit in 128 bits")]
    Overflow,
    #[error(transparent)]
    Parse(#[from] crate::expr::ParseError),
}
