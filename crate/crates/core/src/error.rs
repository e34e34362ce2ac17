use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at column {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("undecidable within truncation order {precision} ({context}); increase truncation")]
    Truncation { context: String, precision: usize },

    #[error("{0}")]
    Math(String),

    #[error("bound exhausted: {0}")]
    BoundExhausted(String),
}

impl Error {
    pub fn truncation(context: impl Into<String>, precision: usize) -> Self {
        Error::Truncation {
            context: context.into(),
            precision,
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidInput(message.into())
    }

    pub fn math(message: impl Into<String>) -> Self {
        Error::Math(message.into())
    }
}
