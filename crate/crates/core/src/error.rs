use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the arithmetic and classification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A radicand that must be a non-square turned out to be a perfect square.
    #[error("{value} is a perfect square (root {root})")]
    PerfectSquare { value: BigInt, root: BigInt },

    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An internal consistency check failed. This indicates a bug or a
    /// counterexample to the arithmetic characterization being implemented.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// The congruence orbit search ran past its iteration cap without the
    /// residue state repeating.
    #[error("congruence orbit search exceeded {cap} iterations (modulus {modulus})")]
    OrbitCapExceeded { modulus: u64, cap: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::ContractViolation(msg.into()))
}
