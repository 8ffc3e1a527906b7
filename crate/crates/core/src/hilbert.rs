//! The single sum `T = Σ aₖ/bₖ`, the bilinear sums
//! `S⁽ᵐ⁾ = Σₖ Σₗ aₖaₗ/(bₖ+bₗ)ᵐ` for `m = 1, 2, 3`, and the inequality
//! checks built on them.
//!
//! Double sums always walk the full `n × n` grid in row-major order with a
//! compensated accumulator, so results are reproducible bit for bit.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::NeumaierSum;

/// Relative slack used by every inequality check in this module.
pub const CHECK_SLACK: f64 = 1e-12;

pub const TWO_SQRT_2: f64 = 2.0 * std::f64::consts::SQRT_2;

/// Positive weights `a` paired with positive nodes `b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightVectorPair {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl WeightVectorPair {
    /// Validates lengths and strict positivity. Entries must be finite and
    /// at least the smallest positive normal; subnormals and zeros are
    /// rejected.
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::invalid("weight vectors must be non-empty"));
        }
        if a.len() != b.len() {
            return Err(Error::invalid(format!(
                "length mismatch: {} weights vs {} nodes",
                a.len(),
                b.len()
            )));
        }
        for (name, v) in [("a", &a), ("b", &b)] {
            if let Some((k, x)) = v
                .iter()
                .enumerate()
                .find(|(_, x)| !(x.is_finite() && **x >= f64::MIN_POSITIVE))
            {
                return Err(Error::invalid(format!(
                    "{name}[{k}] = {x} is not a positive normal number"
                )));
            }
        }
        Ok(Self { a, b })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.a
    }

    pub fn nodes(&self) -> &[f64] {
        &self.b
    }

    /// `(λa, λb)`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::invalid(format!(
                "scale factor must be positive and finite, got {lambda}"
            )));
        }
        Self::new(
            self.a.iter().map(|x| lambda * x).collect(),
            self.b.iter().map(|x| lambda * x).collect(),
        )
    }

    /// Applies the same permutation to both vectors. `perm[i]` is the
    /// source index of output position `i`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.len()];
        if perm.len() != self.len() || perm.iter().any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::invalid("not a permutation of the pair indices"));
        }
        Self::new(
            perm.iter().map(|&i| self.a[i]).collect(),
            perm.iter().map(|&i| self.b[i]).collect(),
        )
    }
}

pub fn scale_pair(pair: &WeightVectorPair, lambda: f64) -> Result<WeightVectorPair> {
    pair.scaled(lambda)
}

/// `T = Σ aₖ/bₖ`.
pub fn compute_t(pair: &WeightVectorPair) -> f64 {
    pair.a
        .iter()
        .zip(&pair.b)
        .map(|(a, b)| a / b)
        .sum::<NeumaierSum>()
        .value()
}

/// Exponent of the bilinear sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    One = 1,
    Two = 2,
    Three = 3,
}

impl TryFrom<u32> for Order {
    type Error = Error;

    fn try_from(m: u32) -> Result<Self> {
        match m {
            1 => Ok(Order::One),
            2 => Ok(Order::Two),
            3 => Ok(Order::Three),
            _ => Err(Error::invalid(format!("order m must be 1, 2 or 3, got {m}"))),
        }
    }
}

fn bilinear_sum(pair: &WeightVectorPair, order: Order) -> f64 {
    let mut acc = NeumaierSum::new();
    for (ak, bk) in pair.a.iter().zip(&pair.b) {
        for (al, bl) in pair.a.iter().zip(&pair.b) {
            let s = bk + bl;
            let d = match order {
                Order::One => s,
                Order::Two => s * s,
                Order::Three => s * s * s,
            };
            acc.add(ak * al / d);
        }
    }
    acc.value()
}

/// `S⁽ᵐ⁾ = Σₖ Σₗ aₖaₗ/(bₖ+bₗ)ᵐ` for `m ∈ {1, 2, 3}`.
pub fn compute_s(pair: &WeightVectorPair, m: u32) -> Result<f64> {
    Ok(bilinear_sum(pair, Order::try_from(m)?))
}

/// `T`, the three bilinear sums and the empirical constant
/// `λ_emp = (T² − 2S⁽²⁾)/√(S⁽¹⁾S⁽³⁾)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HilbertQuantities {
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "S1")]
    pub s1: f64,
    #[serde(rename = "S2")]
    pub s2: f64,
    #[serde(rename = "S3")]
    pub s3: f64,
    pub lambda_emp: f64,
}

impl HilbertQuantities {
    /// Fails when `S⁽¹⁾S⁽³⁾` underflows to zero, where `λ_emp` is undefined.
    pub fn compute(pair: &WeightVectorPair) -> Result<Self> {
        let t = compute_t(pair);
        let s1 = bilinear_sum(pair, Order::One);
        let s2 = bilinear_sum(pair, Order::Two);
        let s3 = bilinear_sum(pair, Order::Three);
        let lambda_emp = lambda_from_sums(t, s1, s2, s3)?;
        Ok(Self {
            t,
            s1,
            s2,
            s3,
            lambda_emp,
        })
    }
}

fn lambda_from_sums(t: f64, s1: f64, s2: f64, s3: f64) -> Result<f64> {
    let denom = (s1 * s3).sqrt();
    if !(denom > 0.0 && denom.is_finite()) {
        return Err(Error::invalid(format!(
            "S1*S3 = {} leaves the empirical constant undefined",
            s1 * s3
        )));
    }
    Ok((t * t - 2.0 * s2) / denom)
}

/// Recomputes `λ_emp` from the stored sums.
pub fn empirical_lambda(q: &HilbertQuantities) -> Result<f64> {
    if !(q.t > 0.0 && q.s1 > 0.0 && q.s2 > 0.0 && q.s3 > 0.0) {
        return Err(Error::invalid("Hilbert quantities must be strictly positive"));
    }
    lambda_from_sums(q.t, q.s1, q.s2, q.s3)
}

/// Outcome of one `lhs ≤ rhs` check. `margin = rhs − lhs` carries no slack.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub margin: f64,
}

impl InequalityReport {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            holds: lhs <= rhs + CHECK_SLACK * rhs.abs(),
            margin: rhs - lhs,
        }
    }
}

/// `T² ≤ S⁽¹⁾ + 2S⁽²⁾ + 2S⁽³⁾`, the intermediate Cauchy–Schwarz bound.
pub fn check_cs_bound(pair: &WeightVectorPair) -> InequalityReport {
    let t = compute_t(pair);
    let rhs = bilinear_sum(pair, Order::One)
        + 2.0 * bilinear_sum(pair, Order::Two)
        + 2.0 * bilinear_sum(pair, Order::Three);
    InequalityReport::new(t * t, rhs)
}

/// The scale `√(2S⁽³⁾/S⁽¹⁾)` that turns the Cauchy–Schwarz bound into
/// `T² ≤ 2S⁽²⁾ + 2√2·√(S⁽¹⁾S⁽³⁾)`.
pub fn optimal_scale(pair: &WeightVectorPair) -> f64 {
    (2.0 * bilinear_sum(pair, Order::Three) / bilinear_sum(pair, Order::One)).sqrt()
}

/// `T² ≤ 2S⁽²⁾ + λ·√(S⁽¹⁾S⁽³⁾)`; the proven constant is `λ = 2√2`.
pub fn check_reverse_hilbert(pair: &WeightVectorPair, lambda: f64) -> Result<InequalityReport> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::invalid(format!(
            "lambda must be non-negative and finite, got {lambda}"
        )));
    }
    let t = compute_t(pair);
    let s1 = bilinear_sum(pair, Order::One);
    let s2 = bilinear_sum(pair, Order::Two);
    let s3 = bilinear_sum(pair, Order::Three);
    Ok(InequalityReport::new(t * t, 2.0 * s2 + lambda * (s1 * s3).sqrt()))
}
