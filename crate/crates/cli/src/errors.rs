//! Error classification for exit codes: usage/validation problems exit
//! with 2, unexpected internal failures with 1.

use std::fmt;

pub enum CliError {
    Usage(anyhow::Error),
    Internal(anyhow::Error),
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(anyhow::anyhow!(message.into()))
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(e) => write!(f, "{e:#}"),
            CliError::Internal(e) => write!(f, "{e:#}"),
        }
    }
}

/// Everything user-attributable (bad inputs, malformed files, invalid
/// parameters) classifies as usage; library and I/O failures reached
/// through validated inputs stay internal.
pub trait IntoUsage<T> {
    fn or_usage(self) -> Result<T, CliError>;
    fn or_internal(self) -> Result<T, CliError>;
}

impl<T, E: Into<anyhow::Error>> IntoUsage<T> for Result<T, E> {
    fn or_usage(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::Usage(e.into()))
    }

    fn or_internal(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::Internal(e.into()))
    }
}
