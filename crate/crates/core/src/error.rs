use num_bigint::BigUint;
use thiserror::Error;

use crate::units::Dimension;

/// Failures of the arithmetic, metrology and procedure layers.
///
/// Values are carried as rendered text so errors stay cheap to clone and
/// print without re-deriving a rendering mode.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed literal {literal:?}: {reason}")]
    MalformedLiteral { literal: String, reason: String },

    #[error("{value} has no finite sexagesimal expansion")]
    NonTerminating { value: String },

    #[error("{op} is undefined for zero")]
    ZeroInput { op: &'static str },

    #[error("irregular divisor {value} (prime factor {factor})")]
    IrregularDivisor { value: String, factor: BigUint },

    #[error("{value} is not a perfect square")]
    NotAPerfectSquare { value: String },

    #[error("negative radicand {value}")]
    NegativeRadicand { value: String },

    #[error("{numerator} divided by {divisor} has no finite sexagesimal quotient")]
    NoFiniteQuotient { numerator: String, divisor: String },

    #[error("division by zero")]
    ZeroDivisor,

    #[error("dimension mismatch in {op}: {left} and {right}")]
    DimensionMismatch {
        op: &'static str,
        left: Dimension,
        right: Dimension,
    },

    #[error("{name} must be positive, got {value}")]
    NonPositiveDimension { name: &'static str, value: String },

    #[error("inconsistent constraint: {0}")]
    InconsistentConstraint(String),

    #[error("malformed problem: {0}")]
    MalformedProblem(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    /// True for failures caused by text that does not follow the literal grammar,
    /// as opposed to a violated mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::MalformedLiteral { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// An [`Error`] tagged with the trace step that was being computed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at step `{step}`: {source}")]
pub struct ProcedureError {
    pub step: String,
    #[source]
    pub source: Error,
}

impl ProcedureError {
    pub fn kind(&self) -> &Error {
        &self.source
    }
}

pub(crate) trait AtStep<T> {
    fn at(self, step: &str) -> Result<T, ProcedureError>;
}

impl<T> AtStep<T> for Result<T, Error> {
    fn at(self, step: &str) -> Result<T, ProcedureError> {
        self.map_err(|source| ProcedureError {
            step: step.to_owned(),
            source,
        })
    }
}
