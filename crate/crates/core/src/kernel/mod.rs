//! Exponential-sum approximation of the kernel `1/(1+t)²`.
//!
//! The kernel is the integral over the real line of the density
//! `f_t(x) = exp(2x − (1+t)eˣ)`. Sampling that integral with the trapezoidal
//! rule at step `h` gives the exponential sum `Σ aₙ e^{−bₙ t}` with
//! `aₙ = h·exp(2nh − e^{nh})` and `bₙ = e^{nh}`. Its relative error is
//! controlled through Poisson summation by the decay of `|f̂_t|`, which in
//! turn rests on the `cosh⁻²` majorant checked in [`lemma`].

mod expsum;
mod fourier;
pub mod lemma;

pub use expsum::{
    approx_error_scan, choose_grid_truncation, choose_truncation, delta_bound, envelope_tail_bound,
    evaluate_expsum, generate_terms, log_grid, poisson_identity_check, required_mass,
    ErrorScanReport, ExpSumApproximation, ExpTerm, PoissonReport, GRID_TAIL_FRACTION,
    MASS_ROUNDING_FLOOR, NU_CAP, TAIL_ALLOWANCE_FACTOR,
};
pub use fourier::{envelope, ft_density, ft_hat_by_quadrature, ft_hat_magnitude, target_kernel};
pub use lemma::{lambda0, lm0_coefficient, lm0_majorant_check, Lm0Coefficient, MajorantReport};
