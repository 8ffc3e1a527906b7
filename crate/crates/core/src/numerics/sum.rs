use std::iter::Sum;
use std::ops::AddAssign;

use crate::error::{Error, Result};

/// Running sum with Neumaier's improvement of Kahan compensation.
///
/// Unlike plain Kahan summation the correction is also right when the
/// incoming term is larger in magnitude than the running sum, so
/// `[1.0, -1.0, 1e-17]` and `[1e-17, 1.0, -1.0]` both come out as `1e-17`.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl Sum<f64> for NeumaierSum {
    fn sum<I: Iterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

impl<'a> Sum<&'a f64> for NeumaierSum {
    fn sum<I: Iterator<Item = &'a f64>>(iter: I) -> Self {
        iter.copied().sum()
    }
}

/// Compensated sum of a slice of finite terms.
///
/// Returns an invalid-input error if any term is NaN or infinite.
pub fn try_compensated_sum(terms: &[f64]) -> Result<f64> {
    if let Some((i, x)) = terms.iter().enumerate().find(|(_, x)| !x.is_finite()) {
        return Err(Error::invalid(format!("term {i} is not finite ({x})")));
    }
    Ok(compensated_sum(terms.iter().copied()))
}

/// Compensated sum of an iterator of terms, without input validation.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    terms.into_iter().sum::<NeumaierSum>().value()
}
