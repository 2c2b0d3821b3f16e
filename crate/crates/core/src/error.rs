use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ell = {ell} equals the defining characteristic")]
    EllEqualsP { ell: u32 },
    #[error("cyclotomic operands over different primes ({0} vs {1})")]
    PrimeMismatch(u32, u32),
    #[error("factor index {index} out of range ({count} factors)")]
    FactorIndex { index: usize, count: usize },
    #[error("root {0} is not simple")]
    NotSimple(String),
    #[error("matrix is singular")]
    Singular,
    #[error("precision cap {cap} exceeded")]
    PrecisionCap { cap: u32 },
    #[error("level {0} is not attained by the filtration")]
    LevelNotAttained(u32),
    #[error("eigen-line count {lines} exceeds cap (eigenspace dimension {dim})")]
    LineCap { lines: u128, dim: usize },
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
