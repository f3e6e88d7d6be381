use thiserror::Error;

/// Errors raised across the library.
///
/// The CLI maps each variant onto a process exit code, see [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("singular matrix")]
    Singular,

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("budget exceeded at h = {h}: {detail}")]
    Budget { h: u32, detail: String },

    #[error("sequence not stabilized: checked windows starting at h0 = 0..={largest_window}")]
    NotStabilized { largest_window: u32 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code used by the `sumsets` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Budget { .. } => 4,
            Error::NotStabilized { .. } => 6,
            Error::Internal(_) => 1,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
