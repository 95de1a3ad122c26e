use std::fmt;

use thiserror::Error;

/// Syntax error: byte offset into the input and the tokens that would have
/// been accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>, expected: &[&str]) -> ParseError {
        ParseError { offset, message: message.into(), expected: expected.iter().map(|s| s.to_string()).collect() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)?;
        if !self.expected.is_empty() {
            write!(f, "; expected {}", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] creal::Error),
}

impl CliError {
    /// Process exit code: 3 for bad input, 4 for mathematical failures.
    pub fn exit_code(&self) -> u8 {
        use creal::Error as E;
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 3,
            CliError::Engine(
                E::ParseRational(_) | E::InvalidTolerance(_) | E::InvalidInterval(..) | E::InvalidRational(_),
            ) => 3,
            CliError::Engine(_) => 4,
        }
    }
}
