use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or inconsistent input data.
    Input,
    /// Input is well formed but a hypothesis of the computation fails.
    Hypothesis,
    /// The computation is outside what the library can decide.
    Unsupported,
    /// Two independent routes disagreed; indicates a bug.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a chain complex: d_{degree} . d_{} != 0", degree + 1)]
    NotAComplex { degree: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("cannot combine a {0} with a {1}")]
    MixedKinds(&'static str, &'static str),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("invalid package: {0}")]
    InvalidPackage(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("schema mismatch: expected \"{expected}\", found \"{found}\"")]
    Schema { expected: String, found: String },
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("cannot evaluate: {0}")]
    Unsupported(String),
    #[error("tower did not stabilize within depth {0}")]
    NotStabilized(usize),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("invalid document: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Hypothesis(_) => ErrorClass::Hypothesis,
            Error::Unsupported(_) | Error::NotStabilized(_) => ErrorClass::Unsupported,
            Error::Inconsistent(_) => ErrorClass::Internal,
            _ => ErrorClass::Input,
        }
    }
}
