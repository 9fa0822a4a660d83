use thiserror::Error;

/// Errors raised by the arithmetic layers and the deciders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("step mismatch: {0} vs {1}")]
    StepMismatch(u32, u32),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("elements belong to different graphs")]
    GraphMismatch,

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("element is invertible; inverse is {inverse}")]
    Invertible { inverse: String },

    #[error("neither the element nor one minus it is right invertible: {0}")]
    NotRightInvertible(String),

    #[error("no constructive procedure available: {0}")]
    NoConstructiveProcedure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
