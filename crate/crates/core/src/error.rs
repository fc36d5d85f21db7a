use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// The step budget ran out before the expansion terminated or recurred.
    /// For valid inputs under the default budget this indicates a defect.
    #[error("step budget of {max_steps} exhausted before termination or recurrence")]
    Budget { max_steps: u64 },

    /// An internal invariant broke (corrupted state).
    #[error("internal invariant violated: {0}")]
    Internal(String),

    /// A certificate document was syntactically malformed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A certificate document parsed but violates a structural invariant.
    #[error("semantic error: {0}")]
    Semantic(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn semantic(msg: impl Into<String>) -> Self {
        Error::Semantic(msg.into())
    }
}
