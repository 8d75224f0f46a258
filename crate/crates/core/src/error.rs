use thiserror::Error;

/// Errors raised by the series engine and the numeric harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation order {trunc} does not retain exponent {exp}")]
    TruncationTooSmall { exp: i64, trunc: i64 },
    #[error("coefficient overflow in {op}")]
    Overflow { op: &'static str },
    #[error("series is not invertible: leading coefficient {leading} is not a unit")]
    NotInvertible { leading: String },
    #[error("exponent {exp} is outside the retained range (trunc = {trunc})")]
    OutOfRange { exp: i64, trunc: i64 },
    #[error("expected an ordinary power series, found lowest exponent {min_exp} in {context}")]
    NotOrdinary { min_exp: i64, context: String },
    #[error("monomial exponent must be non-negative, got {0}")]
    NegativeExponent(i64),
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("unsupported quadratic form ({a},{b},{c}): {reason}")]
    UnsupportedForm {
        a: i64,
        b: i64,
        c: i64,
        reason: &'static str,
    },
    #[error("argument {value} outside the domain {domain}")]
    Domain { value: String, domain: &'static str },
    #[error("resource limit exceeded: {requested} > {limit} ({what})")]
    ResourceLimit {
        what: &'static str,
        requested: u64,
        limit: u64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
