use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input document.
    #[error("parse error: {0}")]
    Parse(String),

    /// Well-formed document missing required structure.
    #[error("schema error: {0}")]
    Schema(String),

    /// A density operator, distribution or code violates its invariants.
    #[error("invalid state {what}: {reason} (residual {residual:.3e})")]
    InvalidState {
        what: String,
        reason: String,
        residual: f64,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Kraus operators that do not form a trace-preserving map.
    #[error("channel is not trace preserving: residual {residual:.3e}")]
    ChannelValidity { residual: f64 },

    #[error("capacity exceeded: {what} = {requested} > cap {cap}")]
    Capacity {
        what: String,
        requested: usize,
        cap: usize,
    },

    /// The simplex solver hit its iteration cap.
    #[error("solver indeterminate after {iterations} iterations (best residual {best_residual:.3e})")]
    Indeterminate { iterations: usize, best_residual: f64 },

    /// Operation precondition that can be quantified.
    #[error("precondition failed: {reason} (residual {residual:.3e})")]
    Precondition { reason: String, residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid_state(what: impl Into<String>, reason: impl Into<String>, residual: f64) -> Self {
        Error::InvalidState {
            what: what.into(),
            reason: reason.into(),
            residual,
        }
    }

    pub(crate) fn capacity(what: impl Into<String>, requested: usize, cap: usize) -> Self {
        Error::Capacity {
            what: what.into(),
            requested,
            cap,
        }
    }

    /// Process exit status used by the command line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Schema(_) | Error::Io(_) | Error::InvalidArgument(_) => 2,
            Error::InvalidState { .. }
            | Error::Shape(_)
            | Error::ChannelValidity { .. }
            | Error::Precondition { .. } => 3,
            Error::Capacity { .. } => 4,
            Error::Indeterminate { .. } => 5,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => Error::Schema(e.to_string()),
            _ => Error::Parse(e.to_string()),
        }
    }
}
