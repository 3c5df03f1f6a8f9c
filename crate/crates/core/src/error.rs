use thiserror::Error;

/// Errors raised by every operation in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} out of range (need 3 <= p < 2^63)")]
    ModulusOutOfRange(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("degree {got} out of range: {reason}")]
    Degree { got: usize, reason: &'static str },
    #[error("characteristic too small: p = {p} but need p > {bound}")]
    CharacteristicTooSmall { p: u64, bound: u64 },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("scan over p = {p} exceeds limit {limit}")]
    ScanBoundExceeded { p: u64, limit: u64 },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("no irreducible polynomial found after {doublings} doublings")]
    Exhausted { doublings: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
