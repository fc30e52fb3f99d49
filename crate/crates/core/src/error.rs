use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("modulus is malformed: {0}")]
    BadModulus(String),
    #[error("modulus is not irreducible over GF({0})")]
    ModulusNotIrreducible(u32),
    #[error("modulus is irreducible but x is not a primitive element")]
    GammaNotPrimitive,
    #[error("field of order {order} exceeds the table cap {cap}")]
    TowerTooLarge { order: u128, cap: u64 },
    #[error("{divisor} does not divide r-1 = {order_minus_one}")]
    NotADivisor { divisor: u64, order_minus_one: u64 },
    #[error("e = {e} does not divide r-1 = {order_minus_one}")]
    EDoesNotDivide { e: u64, order_minus_one: u64 },
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("no solution to the norm equation: {0}")]
    NoDiophantineSolution(String),
    #[error("L = {0} must be a prime congruent to 3 mod 4 and different from 3")]
    BadL(u64),
    #[error("invalid code parameters: {0}")]
    InvalidSpec(String),
    #[error("main assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("polynomial division is not exact")]
    DivisionNotExact,
    #[error("weight formula produced a non-integral or out-of-range value: {0}")]
    NonIntegralWeight(String),
    #[error("enumeration of {size} inputs exceeds the cap {cap}")]
    CapExceeded { size: u128, cap: u64 },
    #[error("no closed form applies: {0}")]
    Unsupported(String),
    #[error("rows of B are not independent: {0}")]
    IndependenceFails(String),
}

pub type Result<T> = std::result::Result<T, Error>;
