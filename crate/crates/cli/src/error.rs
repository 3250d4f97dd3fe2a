use std::fmt;

use rankstab::compress::ResizeError;
use rankstab::freealg::{EvalError, ParseError};
use rankstab::stabilize::{StabilizeError, StabilizeOutcome};
use rankstab::witness::WitnessError;

/// Exit status of the binary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Failure = 1,
    Parse = 2,
    Mismatch = 3,
    NotStabilized = 4,
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable input: DSL or JSON syntax, malformed flag values.
    Parse(String),
    /// Arity, field or size mismatch between inputs.
    Mismatch(String),
    /// A stabilizer ran but could not verify its output.
    NotStabilized { message: String, attempt: Option<Box<StabilizeOutcome>> },
    Failure(String),
}

impl CliError {
    pub fn code(&self) -> ExitCode {
        match self {
            CliError::Parse(_) => ExitCode::Parse,
            CliError::Mismatch(_) => ExitCode::Mismatch,
            CliError::NotStabilized { .. } => ExitCode::NotStabilized,
            CliError::Failure(_) => ExitCode::Failure,
        }
    }

    pub fn parse(context: &str, err: impl fmt::Display) -> CliError {
        CliError::Parse(format!("{context}: {err}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Mismatch(m) => write!(f, "input mismatch: {m}"),
            CliError::NotStabilized { message, .. } => write!(f, "not stabilized: {message}"),
            CliError::Failure(m) => write!(f, "{m}"),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::Mismatch(e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::Eval(e) => e.into(),
            WitnessError::Parameter { .. } => CliError::Parse(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<ResizeError> for CliError {
    fn from(e: ResizeError) -> Self {
        match e {
            ResizeError::Eval(e) => e.into(),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<StabilizeError> for CliError {
    fn from(e: StabilizeError) -> Self {
        let message = e.to_string();
        let mut root = &e;
        while let StabilizeError::Component { source, .. } = root {
            root = source;
        }
        match root {
            StabilizeError::Eval(_) => CliError::Mismatch(message),
            StabilizeError::NotStabilized(_) => {
                let attempt = match e {
                    StabilizeError::NotStabilized(o) => Some(o),
                    _ => None,
                };
                CliError::NotStabilized { message, attempt }
            }
            _ => CliError::Failure(message),
        }
    }
}
