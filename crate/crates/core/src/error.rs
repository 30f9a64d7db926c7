use thiserror::Error;

/// Errors raised by the tensor layer, the model evaluators and the verifiers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid leg specification: {0}")]
    InvalidLeg(String),
    #[error("matrix is singular or ill-conditioned (condition estimate {0:e})")]
    Singular(f64),
    #[error("sample lies within the pole margin (denominator {0:e})")]
    PoleProximity(f64),
    #[error("matrix is not proportional to the identity (relative residual {0:e})")]
    NotProportional(f64),
    #[error("operation requires model {expected}, got {got}")]
    WrongModel { expected: String, got: String },
    #[error("principal square root taken too close to the branch cut (argument {0})")]
    BranchCut(f64),
    #[error("exchange map is singular (condition estimate {0:e})")]
    SingularExchange(f64),
    #[error("coefficient storage of {0} entries exceeds the memory bound")]
    MemoryBound(usize),
    #[error("no admissible sample found after {0} retries")]
    SamplingExhausted(usize),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
