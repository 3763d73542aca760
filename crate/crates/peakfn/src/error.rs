//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by constructors, parsers, and operations with preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Entries are not a rearrangement of 1..n.
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    /// An index set violates its range or ordering invariants.
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    /// A set was required to be a peak set (no 1, no two consecutive elements).
    #[error("not a peak set: {0}")]
    NotAPeakSet(String),

    /// Parts are not (strictly) decreasing positive integers.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// A composition part was zero or the weight did not match.
    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    /// A tableau filling violates the standard-filling invariants.
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    /// The operation requires a shape of height at most two.
    #[error("shape has height {0}, expected at most 2")]
    ShapeTooTall(usize),

    /// Degree or basis of a quasisymmetric expression does not fit the operation.
    #[error("basis mismatch: expected {expected}, got {got}")]
    BasisMismatch {
        expected: &'static str,
        got: &'static str,
    },

    /// A counting formula was invoked outside its domain.
    #[error("invalid count arguments: {0}")]
    InvalidCount(String),

    /// Closed-form evaluation outside the stated range.
    #[error("closed form undefined here: {0}")]
    ClosedFormRange(String),

    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
