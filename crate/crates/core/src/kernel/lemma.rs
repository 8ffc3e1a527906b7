//! The `cosh⁻²` majorant of `πx(1+x²)/sinh(πx)` and the constants behind it.
//!
//! The majorant `πx(1+x²)/sinh(πx) ≤ 1/cosh²(λx)` holds on the whole line
//! exactly when `λ ≤ λ₀ = √(π²/6 − 1)`. Sufficiency reduces to the power
//! series coefficients `aₙ` below staying under one.

use std::f64::consts::PI;

use serde::Serialize;

use super::fourier::ln_x_over_sinh;
use crate::error::{Error, Result};

/// Tolerance for `left ≤ right` in [`lm0_majorant_check`].
pub const MAJORANT_SLACK: f64 = 1e-12;

/// `λ₀ = √(π²/6 − 1) ≈ 0.803078`.
pub fn lambda0() -> f64 {
    (PI * PI / 6.0 - 1.0).sqrt()
}

/// Series coefficient `aₙ = (2n+1)(2λ₀/π)^{2n−2}(1/3 + (2n²−n−2)/π²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lm0Coefficient {
    pub n: u32,
    pub value: f64,
}

pub fn lm0_coefficient(n: u32) -> Result<Lm0Coefficient> {
    if n < 2 {
        return Err(Error::invalid(format!("coefficient index must be >= 2, got {n}")));
    }
    let nf = f64::from(n);
    let q = 2.0 * lambda0() / PI;
    let value = (2.0 * nf + 1.0)
        * q.powi(2 * n as i32 - 2)
        * (1.0 / 3.0 + (2.0 * nf * nf - nf - 2.0) / (PI * PI));
    Ok(Lm0Coefficient { n, value })
}

/// `πx(1+x²)/sinh(πx)`, equal to 1 at `x = 0`.
pub fn majorant_left(x: f64) -> f64 {
    (ln_x_over_sinh(PI * x) + (x * x).ln_1p()).exp()
}

/// `1/cosh²(λx)`, without overflow for large arguments.
pub fn majorant_right(x: f64, lambda: f64) -> f64 {
    let y = (lambda * x).abs();
    let e = (-2.0 * y).exp();
    // sech y = 2e^{-y}/(1+e^{-2y})
    4.0 * e / ((1.0 + e) * (1.0 + e))
}

/// `sinh(πx)/(πx) − (1+x²)cosh²(λ₀x)`, non-negative on the whole line.
pub fn lm0_gap_function(x: f64) -> f64 {
    let u = PI * x;
    let sinhc = if u.abs() < 1e-4 {
        1.0 + u * u / 6.0
    } else {
        u.sinh() / u
    };
    let c = (lambda0() * x).cosh();
    sinhc - (1.0 + x * x) * c * c
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MajorantReport {
    pub lambda: f64,
    /// `max(left − right, 0)` over the grid.
    pub max_violation: f64,
    /// Grid point where the violation is largest (first grid point if none).
    pub argmax_x: f64,
    pub holds: bool,
}

/// Evaluates both sides of the majorant on `x_grid`.
pub fn lm0_majorant_check(x_grid: &[f64], lambda: f64) -> Result<MajorantReport> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::invalid(format!("lambda must be positive, got {lambda}")));
    }
    if x_grid.is_empty() || x_grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("grid must be non-empty and finite"));
    }
    let mut max_violation = 0.0;
    let mut argmax_x = x_grid[0];
    for &x in x_grid {
        let v = majorant_left(x) - majorant_right(x, lambda);
        if v > max_violation {
            max_violation = v;
            argmax_x = x;
        }
    }
    Ok(MajorantReport {
        lambda,
        max_violation,
        argmax_x,
        holds: max_violation <= MAJORANT_SLACK,
    })
}

/// `n` equally spaced points on `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}
