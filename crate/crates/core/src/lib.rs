//! Numerical toolkit for the reverse Hilbert-type inequality
//!
//! ```text
//! (Σ aₖ/bₖ)² ≤ 2·Σ aₖaₗ/(bₖ+bₗ)² + 2√2·√(Σ aₖaₗ/(bₖ+bₗ) · Σ aₖaₗ/(bₖ+bₗ)³)
//! ```
//!
//! for positive vectors `a`, `b`, and for the optimality of the constant
//! `2√2`.
//!
//! - [`numerics`]: compensated summation and an adaptive quadrature oracle.
//! - [`hilbert`]: the sums `T`, `S⁽ᵐ⁾` and the inequality checks.
//! - [`kernel`]: exponential-sum approximation of `1/(1+t)²` with its
//!   certified relative error `δ(h)`.
//! - [`optimality`]: certificates `g(δ(h)) ≤ λ_emp(h) ≤ 2√2`.

pub mod corpus;
pub mod error;
pub mod hilbert;
pub mod kernel;
pub mod numerics;
pub mod optimality;

pub use error::{Error, Result};
pub use hilbert::{
    check_cs_bound, check_reverse_hilbert, compute_s, compute_t, empirical_lambda, optimal_scale,
    scale_pair, HilbertQuantities, InequalityReport, WeightVectorPair, TWO_SQRT_2,
};
pub use kernel::{ExpSumApproximation, Lm0Coefficient};
pub use numerics::QuadratureResult;
pub use optimality::{run_certificate, sweep, LambdaCertificate, SweepReport};
