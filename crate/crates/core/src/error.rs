use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unfactorable input {value}: no factorization with trial division up to {bound}")]
    Unfactorable { value: String, bound: u64 },

    #[error("search budget exceeded: {candidates} candidates > budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("coefficient {value} is not a unit at p = {p}")]
    NotUnit { value: String, p: u64 },

    #[error("characteristic 2 is excluded")]
    CharacteristicTwo,

    #[error("pencil is not smooth: d_{i}{j} = 0")]
    NonSmooth { i: usize, j: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A result that contradicts a theorem; always an implementation bug.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }
}
