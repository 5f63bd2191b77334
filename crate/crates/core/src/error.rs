use thiserror::Error;

use crate::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{operation} needs n <= {limit}, got n = {n}")]
    SizeLimit {
        operation: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),

    #[error("set {0} is not independent")]
    NotIndependent(VertexSet),

    #[error("set {set} (argument {which}) is not a crown")]
    NotCrown { which: &'static str, set: VertexSet },

    #[error("set {set} (argument {which}) is not a local maximum independent set")]
    NotLocalMaximum { which: &'static str, set: VertexSet },

    #[error("N[{first}] is not contained in N[{second}]")]
    NeighborhoodNotNested { first: VertexSet, second: VertexSet },

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("set system must be non-empty")]
    EmptyFamily,

    #[error("set {0} is not a member of the family")]
    NotAMember(VertexSet),

    #[error("vertex cover budget must be non-negative, got {0}")]
    NegativeBudget(i64),

    #[error("vertex set over ground size {got} used with a graph on {expected} vertices")]
    GroundMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
