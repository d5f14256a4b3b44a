use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet size must be in 2..={max}, got {got}")]
    InvalidAlphabet { got: usize, max: usize },

    #[error("symbol {symbol} is outside the alphabet of size {size}")]
    SymbolOutOfRange { symbol: usize, size: usize },

    #[error("expected a word of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("rule table of length {len} is not q^(2r+1) for alphabet size {q}")]
    BadTableLength { len: usize, q: usize },

    #[error("rules disagree: {0}")]
    RuleMismatch(String),

    #[error("empty periodic tail")]
    EmptyTail,

    #[error("resource budget exceeded: {what} needs {required}, limit is {limit}")]
    Budget {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("spec is not in period-1 radius>=1 normal form: {0}")]
    NotNormalForm(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn budget(what: &'static str, required: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::Budget {
            what,
            required: required.into(),
            limit: limit.into(),
        }
    }

    /// True for the errors that come from a resource cap rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
