use std::fmt;

/// Failure of one command, carrying its exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Unreadable or invalid input, or a symbol that is not Fredholm where that is required.
    Input(String),
    /// Numerical failure inside the library.
    Numeric(String),
    /// A verification ran to completion and some check failed.
    VerifyFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Numeric(_) | CliError::VerifyFailed => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric failure: {m}"),
            CliError::VerifyFailed => f.write_str("verification failed"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<tph_core::Error> for CliError {
    fn from(e: tph_core::Error) -> Self {
        if e.is_numeric() {
            CliError::Numeric(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
