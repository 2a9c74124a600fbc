use thiserror::Error;

/// Errors raised by the kernel. Each variant maps to a stable code used by
/// the command-line tool.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CendError {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
}

impl CendError {
    pub fn code(&self) -> &'static str {
        match self {
            CendError::Parse { .. } => "E_PARSE",
            CendError::Degenerate(_) => "E_DEGENERATE",
            CendError::Mismatch(_) => "E_MISMATCH",
            CendError::Budget(_) => "E_BUDGET",
        }
    }

    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        CendError::Parse {
            offset,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, CendError>;
