use thiserror::Error;

/// Failure modes of the engine.
///
/// The three kinds map one-to-one onto the CLI exit codes: bad input is a
/// usage error, a violated standing assumption (acyclicity, coprimality) is
/// reported separately from internal inconsistencies such as a failed exact
/// division or a degenerate top-degree quotient.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("assumption violated: {0}")]
    Assumption(String),
    #[error("structural inconsistency: {0}")]
    Structural(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn assumption(msg: impl Into<String>) -> Self {
        Error::Assumption(msg.into())
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 1,
            Error::Assumption(_) => 2,
            Error::Structural(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
