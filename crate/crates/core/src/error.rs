use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A structural precondition on the input does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("jacobi iteration did not converge within {sweeps} sweeps (off-diagonal mass {off_diagonal})")]
    Convergence { sweeps: usize, off_diagonal: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
