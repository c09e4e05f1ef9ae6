use thiserror::Error;

/// Errors raised by constructions, the correlation engine and the bound evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("value {value} out of domain: {reason}")]
    Domain { value: i64, reason: &'static str },
    #[error("{alpha} is not a primitive root modulo {p}")]
    NotPrimitive { alpha: u64, p: u64 },
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("not a bijection on [1, {order}]: {detail}")]
    NotPermutation { order: usize, detail: String },
    #[error("shift filter {0} admits no shift of this grid")]
    EmptyFilter(&'static str),
    #[error("{what} is not applicable for p = {p}")]
    Inapplicable { what: String, p: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(value: impl TryInto<i64>, reason: &'static str) -> Error {
    Error::Domain {
        value: value.try_into().unwrap_or(i64::MAX),
        reason,
    }
}
