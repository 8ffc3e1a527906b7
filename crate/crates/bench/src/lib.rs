//! Fixed inputs shared by the benchmarks.

use revhilbert::corpus::PairCorpus;
use revhilbert::kernel::choose_truncation;
use revhilbert::{ExpSumApproximation, WeightVectorPair};

/// Exponential-sum pair at step `h`, truncated by the mass criterion.
pub fn sweep_pair(h: f64) -> WeightVectorPair {
    let nu = choose_truncation(h).expect("valid step");
    ExpSumApproximation::from_grid(h, nu)
        .and_then(|a| a.to_pair())
        .expect("representable pair")
}

/// A reproducible random pair of length `n`.
pub fn random_pair(n: usize) -> WeightVectorPair {
    let mut corpus = PairCorpus::new(7, n, 1e-3, 1e3);
    loop {
        let p = corpus.next().unwrap();
        if p.len() == n {
            return p;
        }
    }
}
