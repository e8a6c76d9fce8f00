// SPDX-License-Identifier: Apache-2.0

mod common;

use common::Gen;
use subclassical_core::classical::{
    build_dilation, build_dilation_from_mixture, DeterministicMixture, Dilation, StochasticMatrix,
};
use subclassical_core::numerics::{basis_op, ComplexMatrix, ProbabilityVector};
use subclassical_core::qext::{
    canonical_extension, classical_restriction, classify, compare_extensions, compose, gauge_extension,
    generic_qms, measurement_from_unitary, mk_kraus_from_q, permutation_unitary, phi_of_q, vn_measurement,
    CPMap,
};

#[test]
fn extensions_of_arbitrary_bijections_are_doubly() {
    let mut g = Gen::new(1);
    for _ in 0..100 {
        let (n, m) = (1 + g.below(4), 1 + g.below(4));
        let d = Dilation::new(g.probability(m), g.bijection(n, m)).unwrap();
        let ext = canonical_extension(&d);
        assert!(classify(&ext).is_doubly);
        assert!(ext.is_valid());
    }
}

#[test]
fn gauged_permutation_conjugation_is_deterministic() {
    let mut g = Gen::new(2);
    for _ in 0..50 {
        let n = 1 + g.below(6);
        let t = g.bijection(n, 1);
        let u = permutation_unitary(&t);
        let v = gauge_extension(&u, &g.phases(n)).unwrap();
        let q = classical_restriction(&CPMap::from_kraus(vec![v]).unwrap()).unwrap();
        assert!(q.is_deterministic(1e-12));
        for x in 0..n {
            assert!((q[(x, t.forward()[x])] - 1.0).abs() <= 1e-12);
        }
    }
}

#[test]
fn taxonomy_of_the_standard_families() {
    let mut g = Gen::new(3);
    for _ in 0..100 {
        let n = 1 + g.below(5);
        let q = g.stochastic(n);
        assert!(classify(&phi_of_q(&q)).is_purely);
        assert!(classify(&mk_kraus_from_q(&q)).is_measurement);
        let b = g.generator(n);
        let t = g.range(0.0, 2.0);
        assert!(classify(&generic_qms(&b, t).unwrap()).is_doubly);
    }
}

#[test]
fn restrictions_of_the_standard_families() {
    let mut g = Gen::new(4);
    for _ in 0..50 {
        let n = 1 + g.below(5);
        let q = g.stochastic(n);
        let phi = phi_of_q(&q);
        assert!(classical_restriction(&phi).unwrap().max_abs_diff(&q) <= 1e-12);
        assert!(phi.choi_min_eigenvalue() >= -1e-10);
        let mk = mk_kraus_from_q(&q);
        assert!(mk.unitality_deviation() <= 1e-12);
        assert!(classical_restriction(&mk).unwrap().max_abs_diff(&q) <= 1e-12);
        let u = g.unitary(n);
        let meas = measurement_from_unitary(&u).unwrap();
        let qm = classical_restriction(&meas).unwrap();
        for i in 0..n {
            for j in 0..n {
                assert!((qm[(i, j)] - u[(j, i)].norm_sqr()).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn purely_subclassical_maps_are_determined_by_their_restriction() {
    let mut g = Gen::new(5);
    for _ in 0..50 {
        let n = 1 + g.below(5);
        let q = g.stochastic(n);
        let phi = phi_of_q(&q);
        let meas = vn_measurement(n);
        // measure after a doubly extension, or measure before the M_k family
        let a = compose(&meas, &canonical_extension(&build_dilation(&q))).unwrap();
        let b = compose(&mk_kraus_from_q(&q), &meas).unwrap();
        for m in [a, b] {
            let c = classify(&m);
            assert!(c.is_purely);
            assert!(classical_restriction(&m).unwrap().max_abs_diff(&q) <= 1e-12);
            assert!(m.choi_distance(&phi).unwrap() <= 1e-9);
        }
    }
}

#[test]
fn predual_duality() {
    let mut g = Gen::new(6);
    for _ in 0..50 {
        let n = 1 + g.below(5);
        let kraus: Vec<ComplexMatrix> = (0..1 + g.below(4)).map(|_| g.matrix(n, n)).collect();
        let m = CPMap::from_kraus(kraus).unwrap();
        let rho = g.density(n);
        let x = g.matrix(n, n);
        let lhs = m.apply_predual(&rho).matmul(&x).trace();
        let rhs = rho.matmul(&m.apply(&x)).trace();
        assert!((lhs - rhs).norm() <= 1e-10);
    }
}

fn zero_diagonal(g: &mut Gen, n: usize) -> ComplexMatrix {
    let mut x = g.matrix(n, n);
    for i in 0..n {
        x[(i, i)] = Default::default();
    }
    x
}

#[test]
fn block_flags_agree_with_direct_stability() {
    let mut g = Gen::new(7);
    for k in 0..120 {
        let n = 2 + g.below(3);
        let q = g.stochastic(n);
        let m = match k % 6 {
            0 => phi_of_q(&q),
            1 => mk_kraus_from_q(&q),
            2 => generic_qms(&g.generator(n), g.range(0.0, 2.0)).unwrap(),
            3 => canonical_extension(&build_dilation(&q)),
            4 => CPMap::from_kraus(vec![g.unitary(n)]).unwrap(),
            _ => measurement_from_unitary(&g.unitary(n)).unwrap(),
        };
        let c = classify(&m);
        let meas = vn_measurement(n);
        let mut off_stable = true;
        let mut image_diagonal = true;
        for _ in 0..5 {
            let x = zero_diagonal(&mut g, n);
            let y = m.apply(&x);
            off_stable &= meas.apply(&y).max_abs() <= 1e-9;
            let z = g.matrix(n, n);
            let lz = m.apply(&z);
            image_diagonal &= meas.apply(&lz).max_abs_diff(&lz) <= 1e-9;
        }
        let mut diag_stable = true;
        for i in 0..n {
            diag_stable &= m.apply(&basis_op(n, i, i)).offdiag_max_abs() <= 1e-9;
        }
        assert_eq!(c.is_subclassical, diag_stable, "case {k}");
        assert_eq!(c.is_doubly, diag_stable && off_stable, "case {k}");
        assert_eq!(c.is_measurement, image_diagonal, "case {k}");
        assert_eq!(c.is_purely, c.is_doubly && c.is_measurement);
        if c.is_doubly {
            // predual keeps diagonal states diagonal
            let p = g.probability(n);
            let out = m.apply_predual(&ComplexMatrix::real_diagonal(p.weights()));
            assert!(out.offdiag_max_abs() <= 1e-9);
        }
    }
}

#[test]
fn two_dilations_of_one_chain() {
    let q = StochasticMatrix::from_rows(&[[0.5, 0.5], [0.5, 0.5]]).unwrap();
    let greedy = canonical_extension(&build_dilation(&q));
    let mix =
        DeterministicMixture::new(2, ProbabilityVector::uniform(2), vec![vec![0, 1], vec![1, 0]]).unwrap();
    let swap_mix = canonical_extension(&build_dilation_from_mixture(&mix));
    let report = compare_extensions(&greedy, &swap_mix).unwrap();
    assert!(report.restriction_equal);
    assert!(report.choi_distance.is_finite());

    let mut g = Gen::new(8);
    let other = canonical_extension(&build_dilation(&g.stochastic(2)));
    assert!(!compare_extensions(&greedy, &other).unwrap().restriction_equal);
}

#[test]
fn choi_to_kraus_round_trip() {
    let mut g = Gen::new(9);
    for _ in 0..30 {
        let n = 1 + g.below(4);
        let kraus: Vec<ComplexMatrix> = (0..1 + g.below(3)).map(|_| g.matrix(n, n)).collect();
        let m = CPMap::from_kraus(kraus).unwrap();
        let back = CPMap::from_choi(n, m.choi(), 1e-6).unwrap();
        assert!(back.choi_distance(&m).unwrap() <= 1e-10);
        let x = g.matrix(n, n);
        assert!(back.apply(&x).max_abs_diff(&m.apply(&x)) <= 1e-10);
    }
}
