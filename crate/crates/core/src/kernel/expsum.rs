use std::f64::consts::{E, PI};

use serde::Serialize;

use super::fourier::{ft_density, target_kernel};
use super::lemma::lambda0;
use crate::error::{Error, Result};
use crate::hilbert::WeightVectorPair;
use crate::numerics::NeumaierSum;

/// Safety cap on the truncation radius.
pub const NU_CAP: usize = 100_000;

/// The grid-scan truncation keeps the omitted mass below this fraction of `δ(h)`.
pub const GRID_TAIL_FRACTION: f64 = 0.1;

/// `tail_tol = TAIL_ALLOWANCE_FACTOR · δ(h)`, the allowance added to `δ(h)`
/// when a truncated sum is scanned on a bounded window.
pub const TAIL_ALLOWANCE_FACTOR: f64 = 10.0;

/// Lower limit on the mass deficit `2δ` in the truncation criterion. Below
/// roughly `h = 0.15` the deficit `2δ(h)` is smaller than the rounding of a
/// sum of order one, and `1 − 2δ` would not be reachable in binary64.
pub const MASS_ROUNDING_FLOOR: f64 = 16.0 * f64::EPSILON;

/// `δ(h) = 4/(exp(2πλ₀/h) − 1)`.
pub fn delta_bound(h: f64) -> Result<f64> {
    check_step(h)?;
    Ok(4.0 / (2.0 * PI * lambda0() / h).exp_m1())
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("step h must be positive and finite, got {h}")))
    }
}

/// Smallest mass `Σ aₙ/bₙ` a truncated family must reach.
pub fn required_mass(delta: f64) -> f64 {
    1.0 - (2.0 * delta).max(MASS_ROUNDING_FLOOR)
}

fn weight(h: f64, n: i64) -> f64 {
    let nh = n as f64 * h;
    h * (2.0 * nh - nh.exp()).exp()
}

// aₙ/bₙ = h·exp(nh − e^{nh})
fn mass_term(h: f64, n: i64) -> f64 {
    let nh = n as f64 * h;
    h * (nh - nh.exp()).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpTerm {
    pub index: i64,
    /// `aₙ(h) = h·exp(2nh − e^{nh})`. Zero when it underflows, which
    /// happens for `nh ≳ 6.6`.
    pub weight: f64,
    /// `bₙ(h) = e^{nh}`.
    pub rate: f64,
}

/// The family `(aₙ(h), bₙ(h))` for `n = −ν..=ν`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpSumApproximation {
    pub h: f64,
    pub nu: usize,
    pub terms: Vec<ExpTerm>,
    pub delta: f64,
    pub tail_tol: f64,
    /// `Σ aₙ/bₙ` over the stored terms.
    pub mass: f64,
}

impl ExpSumApproximation {
    /// Builds the truncated family without enforcing the mass criterion.
    pub fn from_grid(h: f64, nu: usize) -> Result<Self> {
        let delta = delta_bound(h)?;
        if nu > NU_CAP {
            return Err(Error::TruncationCap { h, cap: NU_CAP });
        }
        let nu_i = nu as i64;
        let terms: Vec<ExpTerm> = (-nu_i..=nu_i)
            .map(|n| ExpTerm {
                index: n,
                weight: weight(h, n),
                rate: (n as f64 * h).exp(),
            })
            .collect();
        let mass = (-nu_i..=nu_i).map(|n| mass_term(h, n)).sum::<NeumaierSum>().value();
        Ok(Self {
            h,
            nu,
            terms,
            delta,
            tail_tol: TAIL_ALLOWANCE_FACTOR * delta,
            mass,
        })
    }

    pub fn satisfies_mass_criterion(&self) -> bool {
        self.mass >= required_mass(self.delta)
    }

    /// `Σ aₙ e^{−bₙ t}`.
    pub fn evaluate(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|term| term.weight * (-term.rate * t).exp())
            .sum::<NeumaierSum>()
            .value()
    }

    /// The terms whose weight is a positive normal number, as a pair
    /// `(a, b)`. Weights that underflow carry no representable mass.
    pub fn to_pair(&self) -> Result<WeightVectorPair> {
        let (a, b) = self
            .terms
            .iter()
            .filter(|term| term.weight >= f64::MIN_POSITIVE)
            .map(|term| (term.weight, term.rate))
            .unzip();
        WeightVectorPair::new(a, b)
    }

    pub fn representable_terms(&self) -> usize {
        self.terms
            .iter()
            .filter(|term| term.weight >= f64::MIN_POSITIVE)
            .count()
    }
}

/// Builds the family and checks `Σ aₙ/bₙ ≥ 1 − 2δ(h)`.
pub fn generate_terms(h: f64, nu: usize) -> Result<ExpSumApproximation> {
    let approx = ExpSumApproximation::from_grid(h, nu)?;
    if !approx.satisfies_mass_criterion() {
        return Err(Error::InsufficientTruncation {
            nu,
            mass: approx.mass,
            required: required_mass(approx.delta),
        });
    }
    Ok(approx)
}

/// Smallest `ν` whose partial mass reaches `1 − 2δ(h)`.
pub fn choose_truncation(h: f64) -> Result<usize> {
    let required = required_mass(delta_bound(h)?);
    let mut mass = NeumaierSum::new();
    mass.add(mass_term(h, 0));
    let mut nu = 0;
    while mass.value() < required {
        nu += 1;
        if nu > NU_CAP {
            return Err(Error::TruncationCap { h, cap: NU_CAP });
        }
        let n = nu as i64;
        mass.add(mass_term(h, -n));
        mass.add(mass_term(h, n));
    }
    Ok(nu)
}

/// Smallest `ν` whose omitted mass `Σ_{|n|>ν} aₙ/bₙ` is at most
/// `GRID_TAIL_FRACTION · δ(h)`. Stricter than [`choose_truncation`]; used
/// when the truncated sum is scanned against the kernel.
pub fn choose_grid_truncation(h: f64) -> Result<usize> {
    let budget = GRID_TAIL_FRACTION * delta_bound(h)?;
    // beyond this radius every mass term is below the smallest subnormal
    let horizon = ((760.0 / h).ceil() as usize + 2).min(NU_CAP + 1);
    let mut tails = vec![0.0; horizon + 1];
    let mut acc = NeumaierSum::new();
    for nu in (0..horizon).rev() {
        let n = (nu + 1) as i64;
        acc.add(mass_term(h, -n));
        acc.add(mass_term(h, n));
        tails[nu] = acc.value();
    }
    tails
        .iter()
        .position(|&tail| tail <= budget)
        .filter(|&nu| nu <= NU_CAP)
        .ok_or(Error::TruncationCap { h, cap: NU_CAP })
}

pub fn evaluate_expsum(approx: &ExpSumApproximation, t: f64) -> f64 {
    approx.evaluate(t)
}

/// `n` points on `[0, t_max]`, equally spaced in `ln(1+t)`.
pub fn log_grid(t_max: f64, n: usize) -> Result<Vec<f64>> {
    if !(t_max > 0.0 && t_max.is_finite()) || n < 2 {
        return Err(Error::invalid(format!(
            "log grid needs t_max > 0 and at least 2 points (got {t_max}, {n})"
        )));
    }
    let span = t_max.ln_1p();
    let mut grid: Vec<f64> = (0..n)
        .map(|i| (span * i as f64 / (n - 1) as f64).exp_m1())
        .collect();
    grid[n - 1] = t_max;
    Ok(grid)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorScanReport {
    pub max_relative_error: f64,
    pub argmax_t: f64,
    /// `δ(h) + tail_tol`.
    pub bound: f64,
    pub within_bound: bool,
}

/// Maximum over the grid of `(1+t)²·|1/(1+t)² − Σ aₙe^{−bₙt}|`.
pub fn approx_error_scan(approx: &ExpSumApproximation, t_grid: &[f64]) -> Result<ErrorScanReport> {
    if t_grid.is_empty() {
        return Err(Error::invalid("t grid must be non-empty"));
    }
    let mut max_relative_error = f64::NEG_INFINITY;
    let mut argmax_t = t_grid[0];
    for &t in t_grid {
        let target = target_kernel(t)?;
        let s = 1.0 + t;
        let err = s * s * (target - approx.evaluate(t)).abs();
        if err > max_relative_error {
            max_relative_error = err;
            argmax_t = t;
        }
    }
    let bound = approx.delta + approx.tail_tol;
    Ok(ErrorScanReport {
        max_relative_error,
        argmax_t,
        bound,
        within_bound: max_relative_error <= bound,
    })
}

/// Bound on `h·Σ_{|n|>ν} f_t(nh)` from the envelope `f_t(x) ≤ e^{(2−e)|x|}`:
/// `2h·e^{(2−e)(ν+1)h}/(1 − e^{(2−e)h})`.
pub fn envelope_tail_bound(h: f64, nu: usize) -> f64 {
    let c = 2.0 - E;
    2.0 * h * (c * (nu as f64 + 1.0) * h).exp() / -(c * h).exp_m1()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoissonReport {
    /// `h·Σ_{|n|≤ν} f_t(nh)`.
    pub lhs: f64,
    /// `1/(1+t)²`.
    pub rhs: f64,
    /// `δ(h)/(1+t)² + truncation_allowance`.
    pub bound: f64,
    pub truncation_allowance: f64,
    pub holds: bool,
}

/// Compares the truncated trapezoidal sum of `f_t` with its integral.
/// Since `h·f_t(nh) = aₙ(h)e^{−bₙ(h)t}`, this also cross-checks the
/// exponential sum against the density.
pub fn poisson_identity_check(h: f64, t: f64, nu: usize) -> Result<PoissonReport> {
    let delta = delta_bound(h)?;
    let rhs = target_kernel(t)?;
    let nu_i = nu as i64;
    let lhs = h * (-nu_i..=nu_i)
        .map(|n| ft_density(n as f64 * h, t))
        .sum::<NeumaierSum>()
        .value();
    let truncation_allowance = envelope_tail_bound(h, nu);
    let bound = delta * rhs + truncation_allowance;
    Ok(PoissonReport {
        lhs,
        rhs,
        bound,
        truncation_allowance,
        holds: (lhs - rhs).abs() <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_values() {
        // frozen from a 40-digit evaluation of 4/(exp(2πλ₀/h) − 1)
        let d05 = delta_bound(0.5).unwrap();
        assert!((d05 - 1.656_823_133_839_284_6e-4).abs() / d05 < 1e-13, "{d05}");
        let d1 = delta_bound(1.0).unwrap();
        assert!((d1 - 2.590_974_384_540_878_7e-2).abs() / d1 < 1e-13, "{d1}");
        assert!(delta_bound(10.0).unwrap() > d1 && d1 > d05);
        assert!(delta_bound(0.0).is_err());
        assert!(delta_bound(-1.0).is_err());
        assert!(delta_bound(f64::NAN).is_err());
    }

    #[test]
    fn delta_matches_field() {
        for h in [0.3, 0.5, 1.0, 1.7] {
            let a = generate_terms(h, choose_truncation(h).unwrap()).unwrap();
            let expected = 4.0 / ((2.0 * PI * lambda0() / h).exp() - 1.0);
            assert!((a.delta - expected).abs() <= 1e-14 * expected);
        }
    }

    #[test]
    fn first_terms_at_unit_step() {
        let a = ExpSumApproximation::from_grid(1.0, 1).unwrap();
        let t0 = a.terms[1];
        assert_eq!(t0.index, 0);
        assert!((t0.weight - (-1.0f64).exp()).abs() < 1e-16);
        assert_eq!(t0.rate, 1.0);
        let t1 = a.terms[2];
        assert!((t1.weight - (2.0 - E).exp()).abs() < 1e-15);
        assert!((t1.weight - 0.487_59).abs() < 5e-6);
        assert!((t1.rate - E).abs() < 1e-15);
    }

    #[test]
    fn term_layout() {
        let a = ExpSumApproximation::from_grid(0.5, 20).unwrap();
        assert_eq!(a.terms.len(), 41);
        assert!(a.terms.windows(2).all(|w| w[0].rate < w[1].rate));
        assert!(a.terms.iter().all(|t| t.weight >= 0.0 && t.rate > 0.0));
        // weights are representable up to nh ≈ 6.6
        assert!(a.terms.iter().filter(|t| t.index <= 13).all(|t| t.weight > 0.0));
        assert_eq!(a.representable_terms(), 34);
        assert_eq!(a.to_pair().unwrap().len(), 34);
    }

    #[test]
    fn truncation_at_half_step() {
        let h = 0.5;
        let nu = choose_truncation(h).unwrap();
        assert_eq!(nu, 16);
        let delta = delta_bound(h).unwrap();
        // analytic negative-side tail h·e^{−νh}/(1 − e^{−h}) must be of order 2δ
        let tail = |nu: usize| h * (-(nu as f64) * h).exp() / -(-h).exp_m1();
        assert!(tail(nu) < 4.0 * delta && tail(nu - 2) > 2.0 * delta);
        let a = generate_terms(h, nu).unwrap();
        assert!(a.mass >= 1.0 - 2.0 * delta && a.mass <= 1.0 + delta);
        assert!(matches!(
            generate_terms(h, nu - 1),
            Err(Error::InsufficientTruncation { nu: 15, .. })
        ));
    }

    #[test]
    fn truncation_at_unit_step() {
        assert_eq!(choose_truncation(1.0).unwrap(), 3);
        assert_eq!(choose_truncation(2.0).unwrap(), 0);
    }

    #[test]
    fn mass_is_monotone_in_nu() {
        let mut prev = 0.0;
        for nu in 0..40 {
            let m = ExpSumApproximation::from_grid(0.5, nu).unwrap().mass;
            assert!(m >= prev);
            prev = m;
        }
    }

    #[test]
    fn grid_truncation_is_stricter() {
        for h in [0.25, 0.5, 0.75, 1.0, 2.0] {
            assert!(choose_grid_truncation(h).unwrap() >= choose_truncation(h).unwrap());
        }
        assert_eq!(choose_grid_truncation(0.5).unwrap(), 22);
    }

    #[test]
    fn small_steps_terminate() {
        let nu = choose_truncation(0.05).unwrap();
        assert!(nu < 2000, "{nu}");
        assert!(choose_grid_truncation(0.05).is_ok());
    }

    #[test]
    fn evaluate_single_term() {
        let a = ExpSumApproximation::from_grid(1.0, 0).unwrap();
        assert!((a.evaluate(0.0) - (-1.0f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn evaluate_at_origin_and_three() {
        let a = generate_terms(0.5, choose_grid_truncation(0.5).unwrap()).unwrap();
        let at0 = a.evaluate(0.0);
        assert!(at0 <= 1.0 + a.delta && at0 >= 1.0 - a.delta - a.tail_tol);
        let err = (a.evaluate(3.0) - 1.0 / 16.0).abs();
        assert!(err <= (a.delta + a.tail_tol) / 16.0);
    }

    #[test]
    fn scan_certificate_and_monotonicity() {
        let grid = log_grid(100.0, 400).unwrap();
        let a05 = generate_terms(0.5, choose_grid_truncation(0.5).unwrap()).unwrap();
        let r05 = approx_error_scan(&a05, &grid).unwrap();
        assert!(r05.within_bound, "{r05:?}");
        assert!(r05.max_relative_error <= 11.0 * a05.delta);

        let doubled = generate_terms(0.5, 2 * a05.nu).unwrap();
        let rd = approx_error_scan(&doubled, &grid).unwrap();
        assert!(rd.max_relative_error <= r05.max_relative_error);

        let a1 = generate_terms(1.0, choose_grid_truncation(1.0).unwrap()).unwrap();
        let r1 = approx_error_scan(&a1, &grid).unwrap();
        assert!(r05.max_relative_error < r1.max_relative_error);
        assert!(approx_error_scan(&a1, &[]).is_err());
        assert!(approx_error_scan(&a1, &[-1.0]).is_err());
    }

    #[test]
    fn log_grid_shape() {
        let g = log_grid(100.0, 400).unwrap();
        assert_eq!(g.len(), 400);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[399], 100.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(log_grid(0.0, 10).is_err());
        assert!(log_grid(1.0, 1).is_err());
    }

    #[test]
    fn poisson_examples() {
        for t in [0.0, 5.0] {
            let r = poisson_identity_check(0.5, t, 30).unwrap();
            assert!(r.holds, "{r:?}");
        }
    }

    #[test]
    fn poisson_matches_expsum() {
        let h = 0.5;
        let a = ExpSumApproximation::from_grid(h, 30).unwrap();
        for t in [0.0, 0.7, 5.0, 40.0] {
            let p = poisson_identity_check(h, t, 30).unwrap();
            assert!((p.lhs - a.evaluate(t)).abs() <= 1e-14 * p.lhs, "t={t}");
        }
    }

    #[test]
    fn envelope_tail_is_an_upper_bound() {
        for (h, nu) in [(0.5, 5usize), (1.0, 2), (0.25, 20)] {
            let direct: f64 = (nu as i64 + 1..2000)
                .map(|n| h * (super::super::envelope(n as f64 * h) * 2.0))
                .sum();
            assert!((envelope_tail_bound(h, nu) - direct).abs() <= 1e-12 * direct);
        }
    }
}
