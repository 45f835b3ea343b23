use thiserror::Error;

use crate::scenario::Scenario;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid scenario {0:?}: every count must be at least 1")]
    InvalidScenario([usize; 4]),

    #[error("expected {expected} entries, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("probability at index {index} is {value}, outside [0, 1]")]
    ProbabilityOutOfRange { index: usize, value: String },

    #[error("probabilities for settings (x={x}, y={y}) sum to {sum}, not 1")]
    NotNormalized { x: usize, y: usize, sum: String },

    #[error("operation requires the (2,2,2,2) scenario, got {0}")]
    UnsupportedScenario(Scenario),

    #[error("behavior is signaling: marginals depend on the remote setting")]
    Signaling,

    #[error("correlators do not define a behavior: p({a},{b}|{x},{y}) = {value} < 0")]
    NotABehavior {
        a: i64,
        b: i64,
        x: usize,
        y: usize,
        value: String,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polytope has no vertices")]
    EmptyPolytope,

    #[error("inequality system is infeasible")]
    Infeasible,

    #[error("inequality system is unbounded along ray {ray:?}")]
    Unbounded { ray: Vec<String> },

    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("invalid observable: {0}")]
    InvalidObservable(String),

    #[error("invalid deterministic weights: {0}")]
    InvalidWeights(String),

    #[error("only d = 2 outcomes are supported, got d = {0}")]
    UnsupportedOutcomeCount(u32),

    #[error("label {0} is not in {{0, 1}}")]
    InvalidLabel(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("numeric mode: {0}")]
    Mode(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable snake_case tag for machine-readable error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidScenario(_) => "invalid_scenario",
            Error::WrongLength { .. } => "wrong_length",
            Error::ProbabilityOutOfRange { .. } => "probability_out_of_range",
            Error::NotNormalized { .. } => "not_normalized",
            Error::UnsupportedScenario(_) => "unsupported_scenario",
            Error::Signaling => "signaling",
            Error::NotABehavior { .. } => "not_a_behavior",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::EmptyPolytope => "empty_polytope",
            Error::Infeasible => "infeasible",
            Error::Unbounded { .. } => "unbounded",
            Error::InvalidState(_) => "invalid_state",
            Error::InvalidObservable(_) => "invalid_observable",
            Error::InvalidWeights(_) => "invalid_weights",
            Error::UnsupportedOutcomeCount(_) => "unsupported_outcome_count",
            Error::InvalidLabel(_) => "invalid_label",
            Error::Parse(_) => "parse",
            Error::Mode(_) => "mode",
            Error::Io(_) => "io",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
