use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("classification refused: {0}")]
    Refusal(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("insufficient level {requested}; stabilization requires level {required}")]
    InsufficientLevel { requested: u32, required: u32 },
    #[error("oracle disagreement: {0}")]
    Oracle(String),
    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_)
            | Error::Config(_)
            | Error::PrimeMismatch(..)
            | Error::DivisionByZero
            | Error::Domain(_)
            | Error::InsufficientLevel { .. } => 2,
            Error::Refusal(_) | Error::Precision(_) => 3,
            Error::Budget(_) => 4,
            Error::Oracle(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
