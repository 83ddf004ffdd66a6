use swcep_core::Error;
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Semantic(String),
    #[error(transparent)]
    Core(Error),
}

impl CliError {
    /// Errors raised while building objects from input are input errors,
    /// except guard trips.
    pub fn from_build(e: Error) -> CliError {
        match e {
            Error::GuardExceeded { .. } => CliError::Core(e),
            other => CliError::Semantic(other.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(..) | CliError::Parse { .. } | CliError::Semantic(_) => 4,
            CliError::Core(e) => core_exit_code(e),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub fn core_exit_code(e: &Error) -> i32 {
    match e {
        Error::GuardExceeded { .. } | Error::Unsupported(_) => 3,
        Error::HypothesisUnmet(_) => 2,
        Error::Inconsistent(_) => 1,
        _ => 4,
    }
}
