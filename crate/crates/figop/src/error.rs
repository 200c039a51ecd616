//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FigOpError {
    /// A numeric parameter is outside its valid range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A caller violated an operation's contract (e.g. a path that does not
    /// start at the graph root, or an unknown node id).
    #[error("contract violation: {0}")]
    Contract(String),

    /// An instance is too large for the exact solver.
    #[error("instance too large: {0}")]
    TooLarge(String),

    /// A structured text input failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl FigOpError {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        FigOpError::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, FigOpError>;
