//! Seeded random weight/node pairs for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hilbert::WeightVectorPair;

pub const SEED_ENV: &str = "REVHILBERT_SEED";

/// Seed from `REVHILBERT_SEED`, defaulting to 0.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0)
}

/// Pairs of length `1..=max_len` with entries log-uniform in `[lo, hi]`.
#[derive(Debug, Clone)]
pub struct PairCorpus {
    rng: ChaCha8Rng,
    max_len: usize,
    ln_lo: f64,
    ln_hi: f64,
}

impl PairCorpus {
    pub fn new(seed: u64, max_len: usize, lo: f64, hi: f64) -> Self {
        assert!(max_len >= 1 && lo > 0.0 && hi >= lo);
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_len,
            ln_lo: lo.ln(),
            ln_hi: hi.ln(),
        }
    }

    fn entry(&mut self) -> f64 {
        self.rng.gen_range(self.ln_lo..=self.ln_hi).exp()
    }
}

impl Iterator for PairCorpus {
    type Item = WeightVectorPair;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.rng.gen_range(1..=self.max_len);
        let a = (0..n).map(|_| self.entry()).collect();
        let b = (0..n).map(|_| self.entry()).collect();
        Some(WeightVectorPair::new(a, b).expect("log-uniform entries are positive"))
    }
}
