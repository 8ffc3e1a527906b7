use proptest::prelude::*;
use revhilbert::corpus::{seed_from_env, PairCorpus};
use revhilbert::numerics::compensated_sum;
use revhilbert::{
    check_cs_bound, check_reverse_hilbert, compute_s, compute_t, HilbertQuantities,
    WeightVectorPair, TWO_SQRT_2,
};

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..=hi.ln()).prop_map(f64::exp)
}

fn pair_strategy(max_len: usize, lo: f64, hi: f64) -> impl Strategy<Value = WeightVectorPair> {
    (1..=max_len).prop_flat_map(move |n| {
        (
            prop::collection::vec(log_uniform(lo, hi), n),
            prop::collection::vec(log_uniform(lo, hi), n),
        )
            .prop_map(|(a, b)| WeightVectorPair::new(a, b).unwrap())
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

proptest! {
    #[test]
    fn scaling_laws(p in pair_strategy(16, 1e-2, 1e2), which in 0usize..3) {
        let lambda = [0.5, 2.0, 10.0][which];
        let q = p.scaled(lambda).unwrap();
        prop_assert!(rel(compute_t(&q), compute_t(&p)) <= 1e-13);
        for m in 1..=3u32 {
            let expected = lambda.powi(2 - m as i32) * compute_s(&p, m).unwrap();
            prop_assert!(rel(compute_s(&q, m).unwrap(), expected) <= 1e-12);
        }
    }

    #[test]
    fn permutation_invariance(p in pair_strategy(16, 1e-3, 1e3), seed in any::<u64>()) {
        let n = p.len();
        let mut perm: Vec<usize> = (0..n).collect();
        // Fisher-Yates driven by a splitmix-style sequence
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let q = p.permuted(&perm).unwrap();
        prop_assert!(rel(compute_t(&q), compute_t(&p)) <= 1e-13);
        for m in 1..=3 {
            prop_assert!(rel(compute_s(&q, m).unwrap(), compute_s(&p, m).unwrap()) <= 1e-13);
        }
    }

    #[test]
    fn reverse_inequality_and_cs_bound(p in pair_strategy(8, 1e-3, 1e3)) {
        let q = HilbertQuantities::compute(&p).unwrap();
        prop_assert!(q.lambda_emp <= TWO_SQRT_2 + 1e-9);
        prop_assert!(check_cs_bound(&p).holds);
        prop_assert!(check_reverse_hilbert(&p, TWO_SQRT_2).unwrap().holds);
    }

    #[test]
    fn compensated_sum_permutation(v in prop::collection::vec(-1e6f64..1e6, 0..200)) {
        let forward = compensated_sum(v.iter().copied());
        let backward = compensated_sum(v.iter().rev().copied());
        let mut sorted = v.clone();
        sorted.sort_by(f64::total_cmp);
        let ordered = compensated_sum(sorted);
        let scale: f64 = v.iter().map(|x| x.abs()).sum::<f64>().max(f64::MIN_POSITIVE);
        // one rounding of the exact sum plus O(ε²·Σ|x|)
        let slack = 2.0 * f64::EPSILON * forward.abs() + 1e-28 * scale;
        prop_assert!((forward - backward).abs() <= slack);
        prop_assert!((forward - ordered).abs() <= slack);
    }
}

#[test]
fn seeded_corpus_satisfies_main_inequality() {
    let seed = seed_from_env();
    let mut worst: f64 = f64::NEG_INFINITY;
    for p in PairCorpus::new(seed, 8, 1e-3, 1e3).take(1000) {
        let q = HilbertQuantities::compute(&p).unwrap();
        worst = worst.max(q.lambda_emp);
        assert!(q.lambda_emp <= TWO_SQRT_2 + 1e-9, "seed {seed}: {p:?}");
        assert!(check_cs_bound(&p).holds, "seed {seed}: {p:?}");
    }
    assert!(worst > 2.0);
}

#[test]
fn double_sum_is_symmetric_in_diagonal_weighting() {
    // full n×n grid: off-diagonal pairs counted twice, diagonal once
    let p = WeightVectorPair::new(vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
    assert_eq!(compute_s(&p, 1).unwrap(), 2.0);
    assert_eq!(compute_s(&p, 2).unwrap(), 1.0);
    assert_eq!(compute_s(&p, 3).unwrap(), 0.5);
}
