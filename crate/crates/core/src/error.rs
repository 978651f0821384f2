use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("letter '{letter}' is outside the alphabet of size {size}")]
    LetterOutOfRange { letter: char, size: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("strategy error: {0}")]
    Strategy(String),

    /// A resource cap was hit. Never converted into a verdict.
    #[error("cap exceeded: {what} ({observed} > {limit})")]
    CapExceeded { what: &'static str, limit: u64, observed: u64 },

    #[error("config error: {0}")]
    Config(String),
}
