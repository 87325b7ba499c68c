//! Error taxonomy for the whole pipeline.
//!
//! Errors split into two families, mirrored by the CLI exit codes:
//! invalid input (exit code 1) covers everything a user can cause by
//! feeding a bad branch or malformed document; theorem violations
//! (exit code 2) are internal consistency failures that indicate a bug,
//! since the checks they guard are mathematical certainties.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A fraction was constructed with denominator zero.
    #[error("invalid rational: denominator is zero")]
    ZeroDenominator,

    /// `unimodular_completion` requires coprime arguments.
    #[error("unimodular completion requires coprime arguments, got ({m}, {n})")]
    NotCoprime { m: String, n: String },

    /// `sw` is undefined when the bottom-right entry vanishes.
    #[error("swap transform is undefined: bottom-right entry is zero")]
    SingularSwap,

    /// Branch validation failures, each with its own code.
    #[error("invalid branch: {0}")]
    Validation(#[from] ValidationError),

    /// Derivation of a single-term branch.
    #[error("cannot derive a branch with a single term")]
    CannotDerive,

    /// Input document problems (syntax, grammar, duplicate keys).
    #[error("invalid input document: {0}")]
    Parse(String),

    /// A quantity the recursion guarantees failed to hold. Always a bug.
    #[error("theorem violation in {check}: {detail}")]
    TheoremViolation { check: String, detail: String },
}

/// Violations of the standing assumptions on a characteristic tuple.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("branch has no terms")]
    EmptyTuple,

    #[error("branch is not reduced: leading exponent pair must have both coordinates positive, got ({lambda11}, {lambda21})")]
    NotReduced { lambda11: String, lambda21: String },

    #[error("exponent at term {index} is negative: ({lambda1}, {lambda2})")]
    NegativeExponent {
        index: usize,
        lambda1: String,
        lambda2: String,
    },

    #[error("terms {index} and {next} do not increase: each step must be componentwise nondecreasing with at least one strict increase")]
    NotMonotonic { index: usize, next: usize },

    #[error("term {index} is not essential: it lies in the subgroup generated by the integer lattice and the preceding exponent pairs")]
    NotEssential { index: usize },
}

impl Error {
    /// CLI exit code for this error: 1 for bad input, 2 for internal
    /// inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TheoremViolation { .. } => 2,
            _ => 1,
        }
    }

    pub(crate) fn theorem(check: &str, detail: impl Into<String>) -> Error {
        Error::TheoremViolation {
            check: check.to_string(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
