use std::fmt;

use polysparse_core::PolyError;

/// Failures surfaced by the command-line layer.
///
/// The variant decides the process exit code: `Input` maps to 2 and
/// `Refusal` to 3. Check failures inside an experiment are not errors;
/// they are carried in the report and mapped to exit code 1 by `main`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Bad arguments, unreadable files, or malformed data.
    Input(String),
    /// The request is well formed but too large to run exactly.
    Refusal(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Refusal(msg) => write!(f, "resource refusal: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<PolyError> for CliError {
    fn from(err: PolyError) -> Self {
        match err {
            PolyError::ResourceRefusal(msg) => CliError::Refusal(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl CliError {
    /// Process exit code mandated for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Refusal(_) => 3,
        }
    }
}
