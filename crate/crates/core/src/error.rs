use thiserror::Error;

/// Errors raised by the library. Every variant is a violated precondition or
/// an infeasible request; the CLI maps them onto exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the supported limit of 2^20")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("operands belong to different fields ({left} and {right})")]
    FieldMismatch { left: String, right: String },
    #[error("element rep {rep} is out of range for GF({q})")]
    ElementOutOfRange { rep: u64, q: u32 },
    #[error("gcd(n, q) != 1 for n = {n}, q = {q}")]
    NotCoprime { n: usize, q: u32 },
    #[error("repeated-root case unsupported: characteristic {p} divides n = {n}")]
    RepeatedRoots { n: usize, p: u32 },
    #[error("n must be at least {min}, got {n}")]
    LengthTooSmall { n: usize, min: usize },
    #[error("polynomial of degree {degree} does not fit in length {n}")]
    DegreeOverflow { degree: usize, n: usize },
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("polynomial is divisible by x")]
    DivisibleByX,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("-1 is not a square in GF({q})")]
    MinusOneNotSquare { q: u32 },
    #[error("n = {n} must be odd")]
    EvenLength { n: usize },
    #[error("requires {expected} q, got q = {q}")]
    WrongParity { expected: &'static str, q: u32 },
    #[error("code is not self-dual")]
    NotSelfDual,
    #[error("x^{n} - 1 over GF({q}) is not of the form (x - 1) h(x) with h irreducible")]
    NotTwoFactor { n: usize, q: u32 },
    #[error("exhaustion infeasible: {work} exceeds budget {budget}; use sampling in census")]
    BudgetExceeded { work: u128, budget: u128 },
    #[error("value {value} outside domain {domain}")]
    OutOfDomain { value: f64, domain: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("count overflows 128 bits")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
