//! Desk-scale reproduction of the optimality of `2√2`.
//!
//! For a step `h` the truncated exponential-sum family is turned into a
//! weight/node pair and its empirical constant `λ_emp` is computed. The
//! bounds `T ≥ 1 − 2δ`, `S⁽¹⁾ ≤ (1+δ)²/3` and `S⁽²⁾, S⁽³⁾ ≤ (1+δ)²/6` give
//! the rigorous floor
//!
//! ```text
//! λ_emp ≥ g(δ) = 3√2·[(1−2δ)² − (1+δ)²/3]/(1+δ)²
//! ```
//!
//! while the reverse inequality caps `λ_emp` at `2√2`. Since `δ(h) → 0`,
//! the sandwich pinches onto `2√2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{HilbertQuantities, TWO_SQRT_2};
use crate::kernel::{choose_truncation, generate_terms, ExpSumApproximation};

pub const H_MIN: f64 = 0.05;
pub const H_MAX: f64 = 2.0;

/// `g(δ)` is only meaningful for `δ` below this value.
pub const DELTA_MAX: f64 = 0.2;

/// Relative slack for [`bound_chain_check`].
pub const CHAIN_SLACK: f64 = 1e-10;

/// Absolute slack on both sides of the sandwich `g ≤ λ_emp ≤ 2√2`.
pub const SANDWICH_SLACK: f64 = 1e-9;

/// Below this gap `λ_emp` is indistinguishable from `2√2` in binary64.
pub const SATURATION_GAP: f64 = 1e-12;

/// `g(δ) = 3√2·[(1−2δ)² − (1+δ)²/3]/(1+δ)²` for `0 ≤ δ < 0.2`.
pub fn rigorous_lower_bound(delta: f64) -> Result<f64> {
    if !(0.0..DELTA_MAX).contains(&delta) {
        return Err(Error::invalid(format!(
            "delta must lie in [0, {DELTA_MAX}), got {delta}"
        )));
    }
    let lo = 1.0 - 2.0 * delta;
    let hi = 1.0 + delta;
    // 3√2·[lo² − hi²/3]/hi² written so that δ = 0 gives 2√2 exactly
    Ok(TWO_SQRT_2 * (3.0 * lo * lo - hi * hi) / (2.0 * hi * hi))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaCertificate {
    pub h: f64,
    pub nu: usize,
    /// Terms with a representable weight, i.e. the length of the pair.
    pub terms_used: usize,
    pub delta: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "S1")]
    pub s1: f64,
    #[serde(rename = "S2")]
    pub s2: f64,
    #[serde(rename = "S3")]
    pub s3: f64,
    pub lambda_emp: f64,
    /// `g(δ(h))`; `None` when `δ(h) ≥ 0.2` and the floor is vacuous.
    #[serde(rename = "g")]
    pub lower_bound_g: Option<f64>,
    pub upper_bound: f64,
    /// `2√2 − λ_emp`.
    pub gap: f64,
    /// The gap is below [`SATURATION_GAP`].
    pub saturated: bool,
    pub sandwich_holds: bool,
}

impl LambdaCertificate {
    pub fn from_approximation(approx: &ExpSumApproximation) -> Result<Self> {
        let pair = approx.to_pair()?;
        let q = HilbertQuantities::compute(&pair)?;
        let lower_bound_g = if approx.delta < DELTA_MAX {
            Some(rigorous_lower_bound(approx.delta)?)
        } else {
            None
        };
        let gap = TWO_SQRT_2 - q.lambda_emp;
        let above_floor = lower_bound_g.is_none_or(|g| g <= q.lambda_emp + SANDWICH_SLACK);
        Ok(Self {
            h: approx.h,
            nu: approx.nu,
            terms_used: pair.len(),
            delta: approx.delta,
            t: q.t,
            s1: q.s1,
            s2: q.s2,
            s3: q.s3,
            lambda_emp: q.lambda_emp,
            lower_bound_g,
            upper_bound: TWO_SQRT_2,
            gap,
            saturated: gap.abs() < SATURATION_GAP,
            sandwich_holds: above_floor && q.lambda_emp <= TWO_SQRT_2 + SANDWICH_SLACK,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundChainReport {
    pub s1_ok: bool,
    pub s2_ok: bool,
    pub s3_ok: bool,
    pub t_ok: bool,
}

impl BoundChainReport {
    pub fn all(&self) -> bool {
        self.s1_ok && self.s2_ok && self.s3_ok && self.t_ok
    }
}

/// `S⁽¹⁾ ≤ (1+δ)²/3`, `S⁽²⁾ ≤ (1+δ)²/6`, `S⁽³⁾ ≤ (1+δ)²/6`, `T ≥ 1 − 2δ`.
pub fn bound_chain_check(cert: &LambdaCertificate) -> BoundChainReport {
    let up = (1.0 + cert.delta).powi(2);
    let le = |x: f64, bound: f64| x <= bound * (1.0 + CHAIN_SLACK);
    BoundChainReport {
        s1_ok: le(cert.s1, up / 3.0),
        s2_ok: le(cert.s2, up / 6.0),
        s3_ok: le(cert.s3, up / 6.0),
        t_ok: cert.t >= (1.0 - 2.0 * cert.delta) * (1.0 - CHAIN_SLACK),
    }
}

fn check_h(h: f64) -> Result<()> {
    if (H_MIN..=H_MAX).contains(&h) {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "h must lie in [{H_MIN}, {H_MAX}], got {h}"
        )))
    }
}

/// Builds the family for `h ∈ [0.05, 2]` with the smallest admissible `ν`
/// and certifies its empirical constant.
pub fn run_certificate(h: f64) -> Result<LambdaCertificate> {
    check_h(h)?;
    let nu = choose_truncation(h)?;
    let approx = generate_terms(h, nu)?;
    LambdaCertificate::from_approximation(&approx)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub certificates: Vec<LambdaCertificate>,
    /// Gap nonincreasing between neighbours whose step ratio is at most
    /// [`MONOTONE_STEP_RATIO`]; saturated gaps are compared against
    /// [`SATURATION_GAP`] instead of exactly.
    pub gap_monotone: bool,
    pub pass: bool,
}

pub const MONOTONE_STEP_RATIO: f64 = 0.8;

/// One certificate per `h`, in input order. `h_values` must be non-empty,
/// inside `[0.05, 2]` and strictly decreasing.
pub fn sweep(h_values: &[f64]) -> Result<SweepReport> {
    if h_values.is_empty() {
        return Err(Error::invalid("sweep needs at least one h"));
    }
    for &h in h_values {
        check_h(h)?;
    }
    if h_values.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::invalid("sweep h values must be strictly decreasing"));
    }

    let mut certificates = Vec::with_capacity(h_values.len());
    for &h in h_values {
        match run_certificate(h) {
            Ok(c) => certificates.push(c),
            Err(e) => {
                return Err(Error::SweepAborted {
                    h,
                    completed: certificates,
                    source: Box::new(e),
                })
            }
        }
    }

    let gap_monotone = certificates.windows(2).all(|w| {
        if w[1].h / w[0].h > MONOTONE_STEP_RATIO {
            return true;
        }
        if w[0].saturated || w[1].saturated {
            w[1].gap <= w[0].gap.max(SATURATION_GAP)
        } else {
            w[1].gap <= w[0].gap
        }
    });
    let pass = gap_monotone && certificates.iter().all(|c| c.sandwich_holds);
    Ok(SweepReport {
        certificates,
        gap_monotone,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::delta_bound;

    #[test]
    fn lower_bound_values() {
        assert_eq!(rigorous_lower_bound(0.0).unwrap(), TWO_SQRT_2);
        let d = 1.657e-4;
        let g = rigorous_lower_bound(d).unwrap();
        assert!(g >= TWO_SQRT_2 - 5e-3);
        // first-order deficit 18√2·δ
        assert!((TWO_SQRT_2 - g - 18.0 * std::f64::consts::SQRT_2 * d).abs() < 1e-5);
        let g01 = rigorous_lower_bound(0.1).unwrap();
        assert!(g01 > 0.0 && g01 < TWO_SQRT_2 - 1.0);
        assert!(rigorous_lower_bound(0.2).is_err());
        assert!(rigorous_lower_bound(-1e-3).is_err());
    }

    #[test]
    fn lower_bound_decreasing() {
        let vals: Vec<f64> = (0..200)
            .map(|i| rigorous_lower_bound(i as f64 * 0.001).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn certificate_half_step() {
        let c = run_certificate(0.5).unwrap();
        assert_eq!(c.nu, 16);
        let g = c.lower_bound_g.unwrap();
        assert!(g <= c.lambda_emp && c.lambda_emp <= TWO_SQRT_2);
        assert!(c.lambda_emp >= TWO_SQRT_2 - 5e-3);
        assert!(c.sandwich_holds && !c.saturated);
        assert!(bound_chain_check(&c).all());
    }

    #[test]
    fn certificate_unit_step() {
        let c = run_certificate(1.0).unwrap();
        let g = c.lower_bound_g.unwrap();
        assert!(g <= c.lambda_emp && c.lambda_emp <= TWO_SQRT_2);
        assert!(bound_chain_check(&c).all());
        assert!(run_certificate(0.5).unwrap().lambda_emp > c.lambda_emp);
    }

    #[test]
    fn coarse_step_has_vacuous_floor() {
        let c = run_certificate(2.0).unwrap();
        assert!(delta_bound(2.0).unwrap() >= DELTA_MAX);
        assert_eq!(c.lower_bound_g, None);
        assert_eq!(c.nu, 0);
        // a single term always gives exactly 2
        assert!((c.lambda_emp - 2.0).abs() < 1e-15);
        assert!(c.sandwich_holds);
    }

    #[test]
    fn halved_nu_fails_mass_bound() {
        let h = 0.5;
        let nu = choose_truncation(h).unwrap() / 2;
        let approx = ExpSumApproximation::from_grid(h, nu).unwrap();
        assert!(generate_terms(h, nu).is_err());
        let c = LambdaCertificate::from_approximation(&approx).unwrap();
        let chain = bound_chain_check(&c);
        assert!(!chain.t_ok);
        assert!(chain.s1_ok && chain.s2_ok && chain.s3_ok);
    }

    #[test]
    fn sweep_examples() {
        let r = sweep(&[1.0, 0.75, 0.5]).unwrap();
        assert_eq!(r.certificates.len(), 3);
        assert!(r.pass && r.gap_monotone);
        let gaps: Vec<f64> = r.certificates.iter().map(|c| c.gap).collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2]);

        let single = sweep(&[0.5]).unwrap();
        assert_eq!(single.certificates[0], run_certificate(0.5).unwrap());

        let coarse = sweep(&[2.0, 1.0]).unwrap();
        assert!(coarse.pass);
        assert!(coarse.certificates[1].gap < coarse.certificates[0].gap);
    }

    #[test]
    fn sweep_validation() {
        assert!(sweep(&[]).is_err());
        assert!(sweep(&[3.0]).is_err());
        assert!(sweep(&[0.01]).is_err());
        assert!(sweep(&[0.5, 1.0]).is_err());
        assert!(sweep(&[0.5, 0.5]).is_err());
        assert!(run_certificate(2.5).is_err());
    }

    #[test]
    fn fine_steps_saturate() {
        let c = run_certificate(0.1).unwrap();
        assert!(c.sandwich_holds, "{c:?}");
        assert!(c.gap.abs() < 1e-9);
    }
}
