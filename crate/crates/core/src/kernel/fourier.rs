use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::numerics::{integrate_line, QuadratureResult};

/// `1/(1+t)²` for `t ≥ 0`.
pub fn target_kernel(t: f64) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::invalid(format!("kernel argument must be >= 0, got {t}")));
    }
    let s = 1.0 + t;
    Ok(1.0 / (s * s))
}

/// The density `f_t(x) = exp(2x − (1+t)eˣ)`, whose integral over the line
/// is `1/(1+t)²`. Underflows to zero for large `|x|`.
pub fn ft_density(x: f64, t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    if x > 709.0 {
        return 0.0;
    }
    (2.0 * x - (1.0 + t) * x.exp()).exp()
}

/// `e^{(2−e)|x|}`, a majorant of `f_t` for every `t ≥ 0`.
pub fn envelope(x: f64) -> f64 {
    ((2.0 - std::f64::consts::E) * x.abs()).exp()
}

/// `ln(πw/sinh(πw))` for `w ≥ 0`, finite for every finite `w`.
pub(crate) fn ln_x_over_sinh(x: f64) -> f64 {
    let x = x.abs();
    if x < 1e-4 * PI {
        // x/sinh x = 1 − x²/6 + 7x⁴/360 − …
        let x2 = x * x;
        (-x2 / 6.0 + 7.0 * x2 * x2 / 360.0).ln_1p()
    } else if x < 20.0 {
        (x / x.sinh()).ln()
    } else {
        x.ln() - (x - LN_2 + (-(-2.0 * x).exp()).ln_1p())
    }
}

/// Closed form `|f̂_t(w)| = (1+t)⁻²·√(πw(1+w²)/sinh(πw))`, evaluated in log
/// space so that it stays finite where `sinh` would overflow. Even in `w`;
/// the removable singularity at `w = 0` takes its limit `(1+t)⁻²`.
pub fn ft_hat_magnitude(w: f64, t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    let w = w.abs();
    let ln_mag = 0.5 * (ln_x_over_sinh(PI * w) + (w * w).ln_1p()) - 2.0 * (1.0 + t).ln();
    ln_mag.exp()
}

/// `|∫ f_t(x) e^{−iwx} dx|` by quadrature of the real and imaginary parts.
/// Independent of [`ft_hat_magnitude`]; used to check it.
pub fn ft_hat_by_quadrature(w: f64, t: f64, tol: f64) -> Result<QuadratureResult> {
    let re = integrate_line(|x| ft_density(x, t) * (w * x).cos(), tol)?;
    let im = integrate_line(|x| ft_density(x, t) * (w * x).sin(), tol)?;
    Ok(QuadratureResult {
        value: re.value.hypot(im.value),
        error_estimate: re.error_estimate + im.error_estimate,
        evaluations: re.evaluations + im.evaluations,
    })
}
