use alloc::string::String;

/// Errors raised by the exact kernels.
///
/// Identity failures are never errors; they are recorded in reports.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("certified window is empty or too small: {0}")]
    WindowCollapse(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("no nonzero coefficient is certified")]
    ZeroOrUnknown,
    #[error("denominator vanishes identically at the flag")]
    ZeroDenominator,
    #[error("unsupported flag: {0}")]
    UnsupportedFlag(String),
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),
    #[error("divisor is not supported on torus-invariant curves")]
    NonMonomial,
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("idele does not lie in the {0} subgroup")]
    SubgroupMismatch(&'static str),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn collapse(what: &str) -> Error {
    Error::WindowCollapse(String::from(what))
}
