use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at item {item}: {reason}")]
    Syntax { item: usize, reason: String },

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("invalid multiplicity `{mult}` for `{label}`: must be a positive integer or `inf`")]
    BadMultiplicity { label: String, mult: String },

    #[error("element `{0}` has unbounded multiplicity; a clamp (the query size) is required")]
    UnboundedWithoutClamp(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("methods disagree: {0}")]
    Disagreement(String),

    #[error("enumeration budget of {max_states} states exceeded")]
    BudgetExceeded { max_states: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
