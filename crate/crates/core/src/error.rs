use thiserror::Error;

use crate::combinatorics::CombinatorialType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("multiplicity at infinity is not defined here; conjugate by 1/x")]
    InfinityNotAllowed,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("incomplete factorization: cofactor {cofactor} is beyond the trial-division limits")]
    IncompleteFactorization { cofactor: String },
    #[error("invalid degree {d}: {reason}")]
    InvalidDegree { d: u64, reason: &'static str },
    #[error("invalid combinatorial type ({d}; {e1}, {e2}, {e3}): {reason}")]
    InvalidType {
        d: u64,
        e1: u64,
        e2: u64,
        e3: u64,
        reason: String,
    },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("no closed form in scope for type {0}")]
    Unsupported(CombinatorialType),
    #[error("map is constant")]
    ConstantMap,
    #[error("not Belyi-normalized: {0}")]
    NotBelyiNormalized(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("theorem inapplicable: {0}")]
    TheoremInapplicable(String),
    #[error("hypothesis unmet for type {0}: need 2 | d with e2 <= 2^v2(d), 3 | d with e2 <= 3^v3(d), or d = p^l with e2 <= p^l")]
    HypothesisUnmet(CombinatorialType),
    #[error("backward closure did not stabilize within {0} levels")]
    LevelCapReached(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
