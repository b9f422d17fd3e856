use thiserror::Error;

/// Errors produced by the library.
///
/// `Capacity` is kept separate from the other variants because callers map it
/// to a distinct process exit code: running out of budget is recoverable by
/// raising `--mem-budget`, while the others indicate bad inputs.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation cannot run within the configured memory budget.
    #[error(
        "capacity error: {what} needs at least {required} bytes but the budget is {budget} bytes"
    )]
    Capacity {
        what: &'static str,
        required: u64,
        budget: u64,
    },

    /// An index or argument exceeds a structural limit (sieve range, set cap).
    #[error("range error: {what} = {value} exceeds limit {limit}")]
    Range {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    /// A set file violated the newline-delimited, strictly ascending format.
    #[error("invalid set data: {0}")]
    InvalidSet(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
