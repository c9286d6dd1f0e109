use thiserror::Error;

use crate::properties::ViolationWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid hyperedge: {0}")]
    InvalidEdge(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hyperedge {edge} is not of the form ab -> c")]
    NotTwoOne { edge: usize },

    #[error("search space of {needed} exceeds cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    /// The input fails a hypothesis; the witness certifies it.
    #[error("hypothesis violated: {0}")]
    Violation(ViolationWitness),

    /// A recoloring algorithm got stuck, which certifies that its
    /// precondition does not hold for the input.
    #[error("precondition violated: {0}")]
    ConditionViolated(String),

    /// A structural invariant of the 2->1 decomposition failed.
    #[error("structure violated: {0}")]
    StructureViolated(String),

    #[error("unknown pattern `{0}`")]
    UnknownPattern(String),
}
