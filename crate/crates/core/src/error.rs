use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("{0}-{1} is not an edge of the host graph")]
    NotAnEdge(usize, usize),

    #[error("edge {0}-{1} is oriented more than once")]
    DuplicateArc(usize, usize),

    #[error("edge {0}-{1} is left without a direction")]
    MissingArc(usize, usize),

    #[error("vertex map is not injective: host id {0} is used twice")]
    NonInjective(usize),

    #[error("letter {0} does not occur in the word")]
    LetterAbsent(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),

    #[error("{0}")]
    Invalid(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("status unknown: search budget exhausted before a cover was found (lower bound {lower})")]
    Unknown { lower: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
