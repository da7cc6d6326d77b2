use thiserror::Error;

/// Errors shared across the model modules.
#[derive(Debug, Error)]
pub enum ModelError {
    /// A numeric parameter violated its domain (non-positive sd, negative
    /// latency, out-of-range probability, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Inputs that must share a grid (sensitivity profiles) did not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A posterior had zero unnormalized mass everywhere, usually because
    /// the prior excludes every count the likelihood supports.
    #[error("degenerate prior: posterior mass is zero everywhere")]
    DegeneratePrior,

    /// A simulation failed to absorb within its step budget.
    #[error("simulation did not terminate within {max_steps} steps")]
    Timeout { max_steps: u64 },

    /// Structurally invalid input (empty data, empty profile, bad axis spec).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A data file failed to parse; `line` is 1-based.
    #[error("data error at line {line}: {message}")]
    MalformedData { line: usize, message: String },

    /// An observer was asked to run a task it does not implement.
    #[error("observer/task mismatch: {0}")]
    IncompatibleObserver(String),

    /// Every optimizer start failed to produce a finite objective value.
    #[error("fit failed: {0}")]
    FitFailure(String),
}

pub type Result<T> = std::result::Result<T, ModelError>;

impl ModelError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        ModelError::InvalidParameter(msg.into())
    }
}
