//! Error type shared across the library.

use core::fmt;

/// Errors returned by constructors and evaluation routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Error {
    /// A scalar or count argument is outside its documented domain.
    InvalidArgument(&'static str),
    /// An element index is outside the grid.
    IndexOutOfBounds { index: usize, len: usize },
    /// Two vectors that must be paired element by element have different
    /// lengths.
    LengthMismatch { expected: usize, actual: usize },
    /// An operation defined only for square element layouts was given a
    /// rectangular one.
    NonSquareGrid { rows: usize, cols: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
            Error::IndexOutOfBounds { index, len } => {
                write!(f, "element index {index} out of bounds for {len} elements")
            }
            Error::LengthMismatch { expected, actual } => {
                write!(
                    f,
                    "length mismatch: expected {expected} entries, got {actual}"
                )
            }
            Error::NonSquareGrid { rows, cols } => {
                write!(f, "operation requires a square layout, got {rows}x{cols}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
