use std::fmt;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    /// Invalid arguments, malformed input, I/O failure.
    pub const USAGE: u8 = 1;
    /// The frame optimizer did not reach its tolerance.
    pub const NOT_CONVERGED: u8 = 2;
    /// A certified inequality failed, or a validated object did not pass.
    pub const CHECK_FAILED: u8 = 3;
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: exit::USAGE, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<etf_core::Error> for CliError {
    fn from(e: etf_core::Error) -> Self {
        let code = match e {
            etf_core::Error::NotConverged { .. } => exit::NOT_CONVERGED,
            _ => exit::USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::usage(format!("i/o: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::usage(format!("json: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::usage(format!("csv: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
