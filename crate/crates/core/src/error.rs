use thiserror::Error;

/// Errors raised by the laboratory.
#[derive(Debug, Error)]
pub enum LabError {
    /// An input violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// An integral or search did not reach its tolerance inside the budget.
    #[error("numerical failure: {message} (achieved error estimate {error_estimate:e})")]
    NumericalFailure { message: String, error_estimate: f64 },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl LabError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        LabError::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
