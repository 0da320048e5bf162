use thiserror::Error;

/// Errors raised by the construction, bounding and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FccError {
    /// Two operands that must share a length do not.
    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    /// A parameter lies outside the range accepted by the operation.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A generator matrix does not describe a code of the claimed dimension.
    #[error("invalid code: {0}")]
    InvalidCode(String),

    /// An exhaustive routine was asked to run on an instance too large to enumerate.
    #[error("instance too large: {0}")]
    Feasibility(String),

    /// An operation's structural precondition does not hold for its input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A closed-form bound was evaluated outside the domain where it is defined.
    #[error("outside domain: {0}")]
    Domain(String),

    /// A requested linear code could not be built.
    #[error("construction infeasible: {reason}{}", suggestion.as_ref().map(|s| format!(" ({s})")).unwrap_or_default())]
    ConstructionInfeasible {
        reason: String,
        suggestion: Option<String>,
    },

    /// A constructed object failed its own post-verification.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    /// Malformed textual input (bitstrings, matrix files, tables).
    #[error("parse error: {0}")]
    Parse(String),
}

impl FccError {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        FccError::Argument(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        FccError::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, FccError>;
