use thiserror::Error;

/// Endpoint of the unit interval at which an integral or criterion fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Endpoint {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
}

impl Endpoint {
    pub fn as_f64(self) -> f64 {
        match self {
            Endpoint::Zero => 0.0,
            Endpoint::One => 1.0,
        }
    }
}

impl std::fmt::Display for Endpoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Endpoint::Zero => write!(f, "t=0"),
            Endpoint::One => write!(f, "t=1"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("integral diverges at {endpoint}: combined endpoint exponent {exponent} <= -1")]
    NonConvergentIntegral { endpoint: Endpoint, exponent: f64 },
    #[error("invalid singularity hint: {0}")]
    InvalidHint(String),
    #[error("index out of range: need {needed} values, have {available}")]
    IndexOutOfRange { needed: usize, available: usize },
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error("difference path is limited to N <= {cap}, got {requested}")]
    StabilityCapExceeded { requested: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("grid too coarse: M = {m}, need at least {required}")]
    GridTooCoarse { m: usize, required: usize },
    #[error("input degree {degree} does not fit truncation N = {n}")]
    TruncationMismatch { degree: usize, n: usize },
    #[error("evaluation failed: {0}")]
    EvaluationFailure(String),
    #[error("invalid schedule: {0}")]
    ScheduleInvalid(String),
    #[error("criterion violated: {0}")]
    CriterionViolated(String),
    #[error("estimate did not converge: {0}")]
    Unconverged(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Coarse classification used to map failures onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Precondition,
    NonConvergence,
    Refusal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Unconverged(_) => ErrorClass::NonConvergence,
            Error::CriterionViolated(_) => ErrorClass::Refusal,
            _ => ErrorClass::Precondition,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
