use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),

    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u32),

    #[error("cannot embed conductor {from} into {to}: {to} is not a multiple of {from}")]
    BadEmbedding { from: u32, to: u32 },

    #[error("invalid group parameters: {0}")]
    BadParams(String),

    #[error("mismatched element parameters: {0}")]
    MismatchedElements(String),

    #[error("budget exceeded: {task} needs {needed} but the budget is {budget}")]
    BudgetExceeded {
        task: String,
        needed: u64,
        budget: u64,
    },

    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(usize),

    #[error("unknown exceptional group index {0} (expected 4..=37)")]
    UnknownExceptionalIndex(u8),

    #[error("group is not generated by its reflections: layering stalled with {0} classes unassigned")]
    NonReflectionGroup(usize),

    #[error("relation is not a partial order: {0}")]
    PosetAxiomViolation(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
