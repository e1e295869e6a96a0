use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure categories shared by every operation in the crate.
///
/// The CLI maps each category onto its own exit code, so new variants should
/// keep to one of the four families reported by [`Error::kind`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("edge ({from}, {to}) is not admissible: information may only flow from lower to higher agent index")]
    Admissibility { from: usize, to: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("refusing {what}: size {actual} exceeds guard {limit}")]
    Guard {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    #[error("degenerate instance: {0}")]
    Degenerate(String),

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Coarse error family, used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Guard,
    Consistency,
    Io,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Input(_)
            | Error::Admissibility { .. }
            | Error::Precondition(_)
            | Error::Degenerate(_)
            | Error::Unbounded
            | Error::Infeasible => ErrorKind::Input,
            Error::Guard { .. } => ErrorKind::Guard,
            Error::Consistency(_) => ErrorKind::Consistency,
            Error::Io(_) => ErrorKind::Io,
        }
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub(crate) fn guard(what: &'static str, limit: u64, actual: u64) -> Self {
        Error::Guard {
            what,
            limit,
            actual,
        }
    }
}
