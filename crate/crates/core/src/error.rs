use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Lie type: {0}")]
    InvalidType(String),

    #[error("could not parse weight `{0}`: {1}")]
    WeightParse(String, String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("highest weight must have nonnegative integer coordinates, got {0:?}")]
    NotDominant(Vec<i64>),

    #[error("{what} exceeded the configured cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("search budget of {0} exhausted before a decision was reached")]
    BudgetExceeded(usize),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("numerical degeneracy: {0}")]
    Degenerate(String),

    #[error("invalid Lie algebra data: {0}")]
    InvalidAlgebra(String),

    #[error("invalid metric parameters: {0}")]
    InvalidParams(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("malformed structure-constant file: {0}")]
    Format(String),
}
