use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ordinal: {0}")]
    Ordinal(String),

    #[error("relation has a cycle through {cycle:?}")]
    Cycle { cycle: Vec<usize> },

    #[error("element {0} out of range for a poset on {1} elements")]
    OutOfRange(usize, usize),

    #[error("finite posets are limited to {max} elements, got {n}")]
    TooLarge { n: usize, max: usize },

    #[error("invalid term: {0}")]
    InvalidTerm(String),

    #[error("invalid address: {0}")]
    InvalidAddress(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{op} requires a linear term")]
    NotLinear { op: &'static str },

    #[error("{op} requires an FAC term")]
    NotFac { op: &'static str },

    #[error("term is not scattered")]
    NotScattered,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("empty term has no elements")]
    Empty,

    #[error("partial map is not order preserving at {0:?}")]
    NotOrderPreserving((u32, u32)),

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
