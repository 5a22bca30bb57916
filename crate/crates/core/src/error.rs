use thiserror::Error;

/// Errors raised by the computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid series parameters (p = {p}, q = {q}): both must be >= 1")]
    InvalidParams { p: u64, q: u64 },

    /// A requested size exceeds the configured [`crate::Limits`].
    #[error("{what} = {requested} exceeds the configured maximum of {max}")]
    ResourceGuard {
        what: &'static str,
        requested: u64,
        max: u64,
    },

    #[error("Aitken delta-squared is undefined: the second difference is zero")]
    DegenerateDenominator,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse {0:?} as a decimal number")]
    ParseDecimal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
