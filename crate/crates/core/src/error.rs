use thiserror::Error;

/// Errors produced by model construction, parameter validation, and solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter failed validation. `field` names the offending input.
    #[error("invalid {field}: {reason}")]
    Validation { field: &'static str, reason: String },

    /// A transition referenced a state label that is not in the state list.
    #[error("transition ({from} -> {to}) references unknown state `{state}`")]
    UnknownState {
        from: String,
        to: String,
        state: String,
    },

    /// A transition carried a zero, negative, or non-finite rate.
    #[error("transition ({from} -> {to}) has non-positive rate {rate}")]
    NonPositiveRate { from: String, to: String, rate: f64 },

    /// A transition looped a state back onto itself.
    #[error("transition ({state} -> {state}) is a self-loop")]
    SelfLoop { state: String },

    /// The same label appeared twice in the state list.
    #[error("duplicate state label `{state}`")]
    DuplicateState { state: String },

    /// The positive-rate digraph is not a single strongly connected component.
    #[error("chain is reducible: state `{state}` is not in the same strongly connected component as `{other}`")]
    Reducible { state: String, other: String },

    /// A state has zero total exit rate, so the jump chain is undefined there.
    #[error("state `{state}` is absorbing (zero exit rate)")]
    Absorbing { state: String },

    /// The linear solve or iteration failed to produce a valid distribution.
    #[error("numeric failure: {reason}")]
    Numeric { reason: String },
}

impl Error {
    pub fn validation(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Validation {
            field,
            reason: reason.into(),
        }
    }
}
