//! Crate-wide error type.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A membrane specification violates one of its invariants.
    #[error("invalid membrane spec: {0}")]
    InvalidSpec(String),

    /// An argument is outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative solver exhausted its iteration budget.
    #[error("solver did not converge: {0}")]
    Solver(String),

    /// No normal force within the search range achieves the grasp.
    #[error("grasp infeasible within search range (best margin {best_margin} N)")]
    Infeasible { best_margin: f64 },

    /// No trace sample exceeded the contact threshold.
    #[error("no trace sample exceeds the contact threshold")]
    NoContact,

    /// Fewer samples than fitted parameters.
    #[error("not enough samples: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    /// A configuration or CSV file failed to parse.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
