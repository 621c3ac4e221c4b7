use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A size limit that keeps a computation tractable was exceeded.
    #[error("guard `{guard}` violated: {detail}")]
    Guard { guard: &'static str, detail: String },

    #[error("insufficient grid: {value} exceeds the largest placed value {largest}; build more diagonals")]
    InsufficientGrid { value: u64, largest: u64 },

    /// An exact division in a recurrence left a remainder. Always a bug.
    #[error("inexact division in {0}")]
    InexactDivision(String),

    #[error("degenerate distribution: {0}")]
    Degenerate(String),

    #[error("unknown counting strategy `{0}`")]
    UnknownStrategy(String),

    #[error("strategy `{strategy}` does not support {what}")]
    Unsupported { strategy: &'static str, what: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(guard: &'static str, detail: impl Into<String>) -> Error {
    Error::Guard {
        guard,
        detail: detail.into(),
    }
}
