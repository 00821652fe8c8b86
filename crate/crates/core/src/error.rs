use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("alphabets differ: {0} vs {1}")]
    AlphabetMismatch(String, String),
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("variant mismatch: {0}")]
    VariantMismatch(String),
    #[error("automaton is not deterministic and complete")]
    NotDeterministicComplete,
    #[error("{what} bound exceeded: {value} > {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },
    #[error("size guard exceeded for {what}: {size} > {guard}")]
    SizeGuardExceeded {
        what: &'static str,
        size: usize,
        guard: usize,
    },
    #[error("empty word has no value in a positive algebra")]
    EmptyWordInPositive,
    #[error("word `{word}` cannot carry type {tag}")]
    BadTypedWord { word: String, tag: String },
    #[error("accepting set is not closed: {0} and {1} are dependent")]
    NonClosedAccepting(String, String),
    #[error("not a congruence: {0}")]
    NotACongruence(String),
    #[error("ill-typed term: {0}")]
    IllTypedTerm(String),
    #[error("incompatible product: {0}")]
    IncompatibleProduct(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("unknown variety `{0}`")]
    UnknownVariety(String),
    #[error("variety kind mismatch: {0}")]
    VarietyKindMismatch(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for errors caused by a size or length guard rather than bad input.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. } | Error::SizeGuardExceeded { .. })
    }
}
