use thiserror::Error;

use crate::sep::IsolationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("submodule belongs to a different ambient module")]
    AmbientMismatch,
    #[error("module is not primary for the given prime")]
    NotPrimary,
    #[error("element is zero")]
    ZeroElement,
    #[error("element does not belong to the ambient module")]
    NotInAmbient,
    #[error("element already lies in the subgroup")]
    ElementInSubgroup,
    #[error("quasicyclic elements over different primes")]
    PrimeMismatch,
    #[error("class-2 elements of different rank ({0} vs {1})")]
    RankMismatch(usize, usize),
    #[error("not a monic irreducible polynomial: {0}")]
    NotPrime(String),
    #[error("explicit prime set must be nonempty")]
    EmptyPrimeSet,
    #[error("subgroup is not isolated for the complementary prime set")]
    NotIsolated(Box<IsolationReport>),
    #[error("operation needs at least one input")]
    EmptyInput,
    #[error("parse error: {0}")]
    Parse(String),
}
