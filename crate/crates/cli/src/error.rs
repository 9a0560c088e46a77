use bdtriple_core::Error;
use thiserror::Error as ThisError;

/// Failures of a command, grouped by exit code.
#[derive(Debug, ThisError)]
pub enum CliError {
    /// Unreadable input: bad JSON, bad rationals, malformed matrices.
    #[error("parse error: {0}")]
    Parse(String),
    /// The input is well formed but the mathematical claim fails.
    #[error("{0}")]
    Domain(Error),
    /// The answer exists only outside the rationals.
    #[error("unrepresentable over the rationals: {0}")]
    Unrepresentable(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_unrepresentable() {
            CliError::Unrepresentable(e)
        } else {
            CliError::Domain(e)
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Unrepresentable(_) => 3,
        }
    }

    /// Short name of the failed condition, e.g. `BijectionFails`.
    pub fn reason(&self) -> String {
        match self {
            CliError::Parse(_) => "ParseError".into(),
            CliError::Domain(e) | CliError::Unrepresentable(e) => {
                let debug = format!("{e:?}");
                debug
                    .split(|c: char| !c.is_alphanumeric())
                    .next()
                    .unwrap_or_default()
                    .to_string()
            }
        }
    }
}
