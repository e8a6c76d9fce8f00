// SPDX-License-Identifier: Apache-2.0

mod common;

use common::Gen;
use proptest::prelude::*;
use subclassical_core::classical::{
    birkhoff_decompose, build_dilation, complete_to_bijection, deterministic_mixture_decompose,
    dilation_restriction, StochasticMatrix,
};
use subclassical_core::numerics::RealMatrix;
use subclassical_core::Error;

#[test]
fn dilation_round_trip_on_random_corpus() {
    let mut g = Gen::new(2024);
    for k in 0..200 {
        let n = 1 + g.below(6);
        let q = g.stochastic(n);
        let d = build_dilation(&q);
        assert!(d.t().is_consistent());
        let back = dilation_restriction(&d);
        assert!(back.max_abs_diff(&q) <= 1e-12, "case {k}: n = {n}");
    }
}

#[test]
fn mixture_invariants_on_random_corpus() {
    let mut g = Gen::new(7);
    for _ in 0..200 {
        let n = 1 + g.below(6);
        let q = g.stochastic(n);
        let mix = deterministic_mixture_decompose(&q);
        assert!(mix.reconstruct().max_abs_diff(q.matrix()) <= 1e-12);
        assert!(mix.weights().weights().iter().all(|&w| w > 0.0));
        assert!(mix.len() <= n * (n - 1) + 1);
        let total: f64 = mix.weights().weights().iter().sum();
        assert!((total - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn decompositions_are_bit_reproducible() {
    let mut g = Gen::new(99);
    let q = g.stochastic(5);
    assert_eq!(build_dilation(&q), build_dilation(&q.clone()));
    let r = random_doubly_stochastic(&mut g, 5, 4);
    assert_eq!(birkhoff_decompose(&r).unwrap(), birkhoff_decompose(&r.clone()).unwrap());
}

fn random_doubly_stochastic(g: &mut Gen, n: usize, terms: usize) -> RealMatrix {
    let weights: Vec<f64> = (0..terms).map(|_| g.range(0.05, 1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut entries = vec![0.0; n * n];
    for w in weights {
        let p = g.permutation(n);
        for (i, &j) in p.iter().enumerate() {
            entries[i * n + j] += w / total;
        }
    }
    RealMatrix::new(n, entries).unwrap()
}

#[test]
fn birkhoff_on_random_doubly_stochastic() {
    let mut g = Gen::new(31);
    for _ in 0..200 {
        let n = 1 + g.below(6);
        let terms = 1 + g.below(8);
        let r = random_doubly_stochastic(&mut g, n, terms);
        let b = birkhoff_decompose(&r).unwrap();
        assert!(b.reconstruct().max_abs_diff(&r) <= 1e-9);
        assert!(b.len() <= (n - 1) * (n - 1) + 1);
        assert!(b.weights().weights().iter().all(|&w| w > 0.0));
        let total: f64 = b.weights().weights().iter().sum();
        assert!((total - 1.0).abs() <= 1e-15);
        for p in b.permutations() {
            let mut seen = vec![false; n];
            for &j in p {
                assert!(!seen[j]);
                seen[j] = true;
            }
        }
    }
}

#[test]
fn birkhoff_rejects_non_doubly_stochastic() {
    let r = RealMatrix::from_rows(&[[0.5, 0.5], [0.2, 0.8]]).unwrap();
    assert!(matches!(birkhoff_decompose(&r), Err(Error::NotDoublyStochastic { .. })));
}

#[test]
fn dilation_of_stated_example_has_six_environment_states() {
    let q = StochasticMatrix::from_rows(&[[0.7, 0.3], [0.2, 0.8]]).unwrap();
    let d = build_dilation(&q);
    assert_eq!(d.env_size(), 6);
    assert!(dilation_restriction(&d).max_abs_diff(&q) <= 1e-12);
}

proptest! {
    #[test]
    fn completion_is_permutation_with_distinguished_fiber(f in (1usize..7).prop_flat_map(|n| prop::collection::vec(0..n, n))) {
        let n = f.len();
        let s = complete_to_bijection(&f);
        let mut seen = vec![false; n * n];
        for &b in s.forward() {
            prop_assert!(!seen[b]);
            seen[b] = true;
        }
        prop_assert!(s.is_consistent());
        for (x, &fx) in f.iter().enumerate() {
            prop_assert_eq!(s.apply(x, 0), (fx, x));
        }
    }

    #[test]
    fn dilation_round_trip_property(seed in any::<u64>(), n in 1usize..7) {
        let q = Gen::new(seed).stochastic(n);
        let back = dilation_restriction(&build_dilation(&q));
        prop_assert!(back.max_abs_diff(&q) <= 1e-12);
    }
}
