use crate::search::TMetricResult;
use thiserror::Error;

/// Errors produced by any of the height computations.
#[derive(Debug, Error)]
pub enum Error {
    /// Zero has no factored representation and no height.
    #[error("zero is not a group element")]
    ZeroElement,

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),

    /// Integer input outside the supported 64-bit range.
    #[error("input magnitude exceeds 2^63 - 1: {0}")]
    TooLarge(String),

    /// The target is not in the subgroup generated by the candidate set.
    #[error("candidate set does not span target")]
    NotSpanned,

    /// The part-count bound is infinite because the candidate set has no
    /// element of positive height.
    #[error("unbounded part count: candidate set has no element of positive height")]
    UnboundedPartCount,

    /// Search exceeded its node budget; carries the best factorization seen.
    #[error("search budget exceeded")]
    BudgetExceeded { best: Option<Box<TMetricResult>> },

    /// Root finding failed to certify the requested tolerance.
    #[error("root finding did not converge (best residual {residual:.3e})")]
    NonConverged { residual: f64 },

    /// Two vectors define the same norm function where distinct ones are required.
    #[error("degenerate pair: identical norm functions")]
    DegeneratePair,

    /// Parameter outside its documented domain.
    #[error("{0}")]
    InvalidParam(String),
}
