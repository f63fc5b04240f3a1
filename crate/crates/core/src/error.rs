//! Error types shared across the toolkit.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A value lies outside the carrier of the active semiring, or an
    /// argument violates an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation is not defined for the active semiring.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// The closure series of a scalar leaves the carrier.
    #[error("star undefined: {0}")]
    StarUndefined(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Operands belong to different semirings.
    #[error("semiring mismatch: {left} vs {right}")]
    SemiringMismatch { left: String, right: String },

    /// Elimination or iteration failed to reach a fixed point. `pivot`
    /// is the elimination index at fault when one is known.
    #[error("does not stabilize: {reason}")]
    NonStabilizing { reason: String, pivot: Option<usize> },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("unknown node '{0}'")]
    UnknownNode(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<V> = std::result::Result<V, Error>;
