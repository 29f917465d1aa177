use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The input violates the hypothesis of the requested operation.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An exhaustive search completed and found nothing.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// Internal state that the underlying combinatorial argument rules out.
    /// Seeing this on valid input means a bug.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    /// A witness path was invalidated by an earlier move; re-snapshot and retry.
    #[error("stale witness path: {0}")]
    StalePath(String),

    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("randomized stage `{stage}` failed after {attempts} attempt(s): {details}")]
    ProbabilisticFailure {
        stage: &'static str,
        attempts: usize,
        details: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invariant(message: impl Into<String>) -> Self {
        Error::InvariantViolation(message.into())
    }
}
