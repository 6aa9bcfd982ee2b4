use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    DegreeTooSmall(u32),
    #[error("field of order {p}^{m} exceeds 2^31")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("element code {code} out of range for field of order {q}")]
    InvalidElement { code: u64, q: u64 },
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("{0} must be nonzero")]
    ZeroNotAllowed(&'static str),
    #[error("{what}: {divisor} does not divide {value}")]
    NotDivisor {
        what: &'static str,
        divisor: u64,
        value: u64,
    },
    #[error("degenerate triple: {0}")]
    DegenerateTriple(&'static str),
    #[error("set {0} contains zero")]
    ContainsZero(&'static str),
    #[error("set sizes differ: {0}")]
    SizeMismatch(String),
    #[error("set too small: {0}")]
    SetTooSmall(&'static str),
    #[error("expected between {min} and {max} sets, got {got}")]
    SetCount { min: usize, max: usize, got: usize },
    #[error("operation is defined for prime fields only (m = {0})")]
    PrimeFieldOnly(u32),
    #[error("set is not a multiplicative subgroup")]
    NotSubgroup,
    #[error("subgroup was not built as n-th powers")]
    MissingPowerIndex,
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("field of order {q} exceeds the limit {limit} for {what}")]
    FieldLimit {
        what: &'static str,
        q: u64,
        limit: u64,
    },
    #[error("inequality violated: {label}: {lhs} > {rhs}")]
    Violation { label: String, lhs: f64, rhs: f64 },
    #[error("identity failed: {label}: {lhs} != {rhs}")]
    IdentityFailed {
        label: String,
        lhs: String,
        rhs: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that signal a broken invariant rather than bad input.
    pub fn is_violation(&self) -> bool {
        matches!(self, Error::Violation { .. } | Error::IdentityFailed { .. })
    }
}
