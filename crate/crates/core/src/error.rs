//! Error types shared by every structure in the crate.

use thiserror::Error;

/// Errors returned by builders and queries.
///
/// Queries distinguish two failure modes that callers handle differently:
/// [`Error::OutOfRange`] means the argument does not address the structure
/// at all (malformed input), while [`Error::NotFound`] means the argument
/// was well-formed but the requested occurrence does not exist (for
/// example, asking for the fifth `G` in a string with four).
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// A position or prefix length beyond the length of the structure.
    #[error("position {index} out of range (length {len})")]
    OutOfRange { index: usize, len: usize },

    /// An occurrence rank beyond the number of available occurrences.
    #[error("occurrence {rank} not found ({available} available)")]
    NotFound { rank: usize, available: usize },

    /// The input alphabet exceeds what the sequence index supports.
    #[error("alphabet has {found} distinct symbols, limit is {limit}")]
    UnsupportedAlphabet { found: usize, limit: usize },

    /// Structurally invalid input (length mismatches, forbidden bytes,
    /// non-invertible transforms, bad rates).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The requested computation exceeds the configured work budget.
    #[error("work budget exceeded: {required} cells > {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    /// Serialized data that cannot be decoded.
    #[error("corrupt data: {0}")]
    Corrupt(String),

    /// I/O failure while reading or writing serialized structures.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
