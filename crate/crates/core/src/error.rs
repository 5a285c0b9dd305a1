use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("free variable `{0}` remains after grounding")]
    FreeVariable(String),

    #[error("quantifier over `{0}` needs a nonempty constant set")]
    EmptyDomain(String),

    #[error("invalid vocabulary: {0}")]
    Vocabulary(String),

    #[error("{what} exceeds the limit of {limit}")]
    Resource { what: String, limit: usize },

    #[error("dataset row {row}: {message}")]
    Load { row: usize, message: String },

    #[error("malformed document: {0}")]
    Document(String),

    #[error("invalid distribution: {0}")]
    Distribution(String),

    #[error("mu = {0} lies outside [0, 1]")]
    MuDomain(String),

    #[error("query and distribution use different vocabularies")]
    VocabularyMismatch,
}
