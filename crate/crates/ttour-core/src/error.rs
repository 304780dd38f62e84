//! Crate-wide error type.

use crate::rat::Rat;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Instance text could not be parsed; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A precondition on the inputs does not hold.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// An enumeration-based routine was asked to exceed its configured cap.
    #[error("capacity exceeded: {what} is capped at {limit}, got {actual}")]
    Capacity {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    /// A scalar argument is outside the domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// The vector handed to the tree decomposition is not dominatable by a
    /// convex combination of spanning trees. The dual prices certify a
    /// violated partition inequality: every spanning tree has price >= 1
    /// while the input vector prices out below 1.
    #[error("vector admits no spanning-tree convex combination: packing value {value} < 1")]
    NotTreeDecomposable { value: Rat, dual_prices: Vec<Rat> },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
