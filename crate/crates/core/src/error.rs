use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller passed arguments outside an operation's contract.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// The operation is undefined on this input (e.g. L-operator on a typical weight).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Two routes that must agree did not (e.g. lower/upper dimension bounds grow at different rates).
    #[error("inconsistency: {0}")]
    Inconsistency(String),

    /// A self-check failed. Never expected; points at a logic bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_)
            | Error::Parameter(_)
            | Error::Parse(_)
            | Error::Domain(_)
            | Error::Unsupported(_) => 2,
            Error::Inconsistency(_) => 3,
            Error::Internal(_) => 1,
        }
    }
}

macro_rules! usage {
    ($($arg:tt)*) => { $crate::error::Error::Usage(format!($($arg)*)) };
}
pub(crate) use usage;
