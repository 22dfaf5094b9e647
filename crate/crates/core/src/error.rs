use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: symbol {symbol:?} is not in the alphabet")]
    UnknownSymbol { line: usize, symbol: char },

    #[error("line {line}: empty forbidden word")]
    EmptyWord { line: usize },

    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("operation requires a subshift of finite type (the spec has forbidden families)")]
    NotSft,

    #[error("operation requires the binary alphabet")]
    NotBinary,

    #[error("the subshift is empty")]
    EmptySubshift,

    #[error("word {0} is not in the language")]
    NotInLanguage(String),

    #[error("alphabets differ")]
    AlphabetMismatch,

    #[error("{0}")]
    InvalidArgument(String),

    #[error("word table too large: {size} entries")]
    TooLarge { size: u128 },

    #[error("subshift is not {c}-block-gluing")]
    NotBlockGluing { c: usize },

    #[error("power iteration did not converge within {iterations} iterations (gap {gap:e})")]
    NonConvergence { iterations: u64, gap: f64 },

    #[error("tolerance {tol:e} is below the rounding floor {floor:e}")]
    ToleranceTooTight { tol: f64, floor: f64 },

    #[error("state file version {found} is not supported (expected {expected})")]
    StateVersion { found: u32, expected: u32 },

    #[error("corrupt state file: {0}")]
    CorruptState(String),

    #[error("budget must be non-negative and finite")]
    InvalidBudget,

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
