use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    /// A value violates a structural invariant of its type.
    #[error("validation error: {0}")]
    Validation(String),

    /// An operation was called outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An epsilon oracle returned data that does not fit the packets.
    #[error("oracle contract violated: {0}")]
    OracleContract(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }

    /// Stable short name used in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownSymbol(_) => "unknown_symbol",
            Error::Validation(_) => "validation",
            Error::Domain(_) => "domain",
            Error::OracleContract(_) => "oracle_contract",
            Error::Syntax { .. } => "syntax",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
