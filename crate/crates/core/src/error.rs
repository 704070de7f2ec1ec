use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("modulus must be greater than 1, got {0}")]
    ModulusTooSmall(u64),

    #[error("modulus {0} is even (2 divides it)")]
    EvenModulus(u64),

    #[error("modulus {n} is not square-free ({p}^2 divides it)")]
    NotSquareFree { n: u64, p: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("two-prime completion needs odd primes p > q, got p = {p}, q = {q}")]
    TwoPrimeOrder { p: u64, q: u64 },

    #[error("sequence entry {value} at index {index} is not in {{-1, 0, +1}}")]
    InvalidEntry { index: usize, value: i64 },

    #[error("{kind} sequence violates its support invariant at index {index}")]
    SupportViolation { kind: &'static str, index: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("supports overlap at index {0}")]
    OverlappingSupport(usize),

    #[error("expected a {expected} sequence, got {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("enumerating 2^{psi} completions is too expensive (limit 2^{limit})")]
    EnumerationTooLarge { psi: u64, limit: u64 },

    #[error("merit factor undefined: ||A||_4^4 equals ||A||_2^4")]
    ZeroDenominator,

    #[error("operation needs odd length (even degree), got n = {0}")]
    EvenLength(usize),

    #[error("length {n} exceeds the cost guard {limit}")]
    CostGuard { n: usize, limit: usize },

    #[error("FFT autocorrelation rounding residual {0:e} exceeds guard")]
    FftResidual(f64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}
