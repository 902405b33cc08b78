use thiserror::Error;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A mathematically undefined request (inverting zero, dividing by the zero polynomial).
    #[error("domain error: {0}")]
    Domain(String),

    /// The caller broke an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),

    /// A brute-force enumeration would exceed the configured cap.
    #[error("resource error: {what} needs {requested} elements, enumeration cap is {cap}")]
    Resource {
        what: String,
        requested: String,
        cap: u64,
    },

    /// Two Vandermonde nodes coincide.
    #[error("singular Vandermonde matrix: nodes x_{first} and x_{second} coincide")]
    Singular { first: usize, second: usize },

    /// No closed form is known for this exponent.
    #[error("unsupported exponent m = {m}: base-{q} digit sum {digit_sum} must lie in 1..={max}")]
    UnsupportedExponent {
        m: u64,
        q: u64,
        digit_sum: u64,
        max: u64,
    },

    /// An identity that must hold by construction failed; indicates an arithmetic bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
