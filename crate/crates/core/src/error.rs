use thiserror::Error;

use crate::numerics::QuadratureResult;
use crate::optimality::LambdaCertificate;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The adaptive quadrature ran out of evaluations. `best` holds the
    /// estimate reached so far, with its (unconverged) error estimate.
    #[error(
        "quadrature budget of {budget} evaluations exceeded (best estimate {} ± {})",
        best.value,
        best.error_estimate
    )]
    BudgetExceeded { budget: usize, best: QuadratureResult },

    #[error(
        "insufficient truncation at nu = {nu}: mass {mass} is below the required {required}"
    )]
    InsufficientTruncation { nu: usize, mass: f64, required: f64 },

    #[error("no truncation radius up to {cap} satisfies the criterion for h = {h}")]
    TruncationCap { h: f64, cap: usize },

    /// A sweep stopped early. Certificates computed before the failing step
    /// are kept in `completed`.
    #[error("sweep aborted at h = {h} after {} certificate(s): {source}", completed.len())]
    SweepAborted {
        h: f64,
        completed: Vec<LambdaCertificate>,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
