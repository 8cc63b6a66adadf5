use thiserror::Error;

/// Errors produced by the factorum engines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared generator `{name}` at line {line}, column {column}")]
    UndeclaredGenerator { name: String, line: usize, column: usize },
    #[error("duplicate generator `{name}` at line {line}")]
    DuplicateGenerator { name: String, line: usize },
    #[error("relation at line {line} has an empty side (reduced presentations only)")]
    EmptyRelationSide { line: usize },
    #[error("invalid exploration budget: {0}")]
    InvalidBudget(String),
    #[error("exploration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("instance too large for exhaustive search: {0}")]
    InstanceTooLarge(String),
    #[error("group of order {order} exceeds the cap of {cap}")]
    GroupTooLarge { order: u64, cap: u64 },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("matrix is not an atom")]
    NotAtom,
    #[error("|det| = {det} exceeds the cap of {cap}")]
    DetTooLarge { det: u64, cap: u64 },
    #[error("singular matrix")]
    Singular,
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("`{0}` is not almost prime-like")]
    NotAlmostPrimeLike(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
