use thiserror::Error;

/// Errors raised by the significance toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("index {index} out of range for universe of size {size}")]
    Index { index: usize, size: usize },

    #[error("relation violates the AA-property; asymmetric cycle {cycle:?}")]
    Cyclic { cycle: Vec<usize> },

    #[error("blocks are not pairwise disjoint: element {element} appears twice")]
    Partition { element: usize },

    #[error("relation is not a strict order: {reason}")]
    NotStrictOrder { reason: String },

    #[error("chain term has length {found}, expected {expected}")]
    Length { expected: usize, found: usize },

    #[error("oracle input of size {size} exceeds cap {cap}")]
    OracleSize { size: usize, cap: usize },

    #[error("points {first} and {second} coincide")]
    Injectivity { first: usize, second: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("element {element} is not a member of the ground set")]
    Membership { element: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("evolution did not stop within {max_steps} steps")]
    NonTermination { max_steps: usize },

    #[error("operation requires a {expected} space, got {found}")]
    Space { expected: &'static str, found: &'static str },

    #[error("invalid key value {0:?}")]
    Key(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
