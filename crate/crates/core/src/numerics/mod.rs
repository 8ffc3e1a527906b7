//! Accuracy-critical helpers shared by the rest of the crate: compensated
//! summation and an adaptive quadrature oracle on unbounded domains.

mod quad;
mod sum;

pub use quad::{
    integrate_line, integrate_semiline, integrate_semiline_with_budget, QuadratureResult,
    DEFAULT_EVAL_BUDGET,
};
pub use sum::{compensated_sum, try_compensated_sum, NeumaierSum};
