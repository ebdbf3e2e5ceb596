use thiserror::Error;

/// Errors raised by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("{num} is not divisible by {den} in Z[q, q^-1]")]
    NotDivisible { num: String, den: String },

    #[error("invalid arguments: {0}")]
    InvalidArgs(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("syntax error at offset {offset}: expected {}", expected.join(" or "))]
    Syntax { offset: usize, expected: Vec<String> },

    #[error("context mix at offset {offset}: {message}")]
    ContextMix { offset: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_rank(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::RankMismatch { expected, found })
    }
}
