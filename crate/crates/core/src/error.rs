use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("element {element} does not belong to group {group}")]
    NotAnElement { group: String, element: String },
    #[error("integer overflow while computing in {0}")]
    Overflow(String),
    #[error("ball exceeds the configured limit of {limit} elements")]
    BallTooLarge { limit: usize },
    #[error("invalid group parameter: {0}")]
    InvalidParameter(String),
    #[error("homomorphism is not well defined: {0}")]
    InvalidHomomorphism(String),
    #[error("{0} has no finite enumeration")]
    NotFinite(String),
    #[error("exponent {0} is not a (p+1)-adic fraction")]
    InvalidDenominator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("missing `gens:` line")]
    MissingGenerators,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error(transparent)]
    Group(#[from] GroupError),
    /// `c` vanished on a non-degenerate triple, so no clause of the cocycle fired.
    #[error("no cocycle clause applies to ({a}, {b}); the circular ordering is invalid")]
    NoCaseFired { a: String, b: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    /// The hypothesis of a criterion fails, e.g. an infinite abelianization.
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("spectrum reports have different caps ({0} and {1})")]
    CapMismatch(u64, u64),
    #[error("spectrum report for {0} still has undetermined entries")]
    Undetermined(String),
    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    EnumerationCap { order: u64, cap: u64 },
    #[error("inconsistent spectrum: {0}")]
    Inconsistent(String),
}
