use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is too small (p >= 7 required)")]
    CharacteristicTooSmall(u64),
    #[error("field of order {p}^{k} does not fit in 63 bits")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("no primitive {n}-th roots of unity in a field of order {q}")]
    NoRootsOfUnity { n: u64, q: u64 },
    #[error("enumeration needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("point is singular on the system")]
    SingularPoint,
    #[error("precision cap {cap} reached without resolving all orders")]
    PrecisionCap { cap: usize },
    #[error("exceptional point: {0}")]
    ExceptionalPoint(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
