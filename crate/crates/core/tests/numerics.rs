// SPDX-License-Identifier: Apache-2.0

mod common;

use common::Gen;
use proptest::prelude::*;
use subclassical_core::classical::StochasticMatrix;
use subclassical_core::numerics::{
    hermitian_eigenvalues, kron, matexp, weighted_partial_trace, ComplexMatrix,
};
use subclassical_core::qext::phi_of_q;
use subclassical_core::trajectories::spin_closed_form_unitary;
use subclassical_core::Complex64;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_is_associative(seed in any::<u64>(), p in 1usize..4, q in 1usize..4, r in 1usize..4) {
        // integer entries keep every product exact
        let mut g = Gen::new(seed);
        let mut int = |rows, cols| ComplexMatrix::from_fn(rows, cols, |_, _| {
            Complex64::new(g.below(7) as f64 - 3.0, g.below(7) as f64 - 3.0)
        });
        let (a, b, c) = (int(p, q), int(q, r), int(r, p));
        prop_assert_eq!(kron(&kron(&a, &b), &c), kron(&a, &kron(&b, &c)));
    }

    #[test]
    fn kron_mixed_product(seed in any::<u64>(), n in 1usize..5, m in 1usize..5) {
        let mut g = Gen::new(seed);
        let (a, b) = (g.matrix(n, n), g.matrix(n, n));
        let (c, d) = (g.matrix(m, m), g.matrix(m, m));
        let lhs = kron(&a.matmul(&b), &c.matmul(&d));
        let rhs = kron(&a, &c).matmul(&kron(&b, &d));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn partial_trace_is_trace_compatible(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let mut g = Gen::new(seed);
        let rho = g.density(n);
        let omega = g.density(m);
        let y = g.matrix(n * m, n * m);
        let z = weighted_partial_trace(&y, &omega).unwrap();
        let lhs = rho.matmul(&z).trace();
        let rhs = kron(&rho, &omega).matmul(&y).trace();
        prop_assert!((lhs - rhs).norm() <= 1e-11);
    }

    #[test]
    fn partial_trace_of_products(seed in any::<u64>(), n in 1usize..4, m in 1usize..4) {
        let mut g = Gen::new(seed);
        let (a, b) = (g.matrix(n, n), g.matrix(m, m));
        let omega = g.density(m);
        let z = weighted_partial_trace(&kron(&a, &b), &omega).unwrap();
        let want = a.scale(omega.matmul(&b).trace());
        prop_assert!(z.max_abs_diff(&want) <= 1e-12);
    }

    #[test]
    fn matexp_semigroup(seed in any::<u64>(), n in 1usize..6, s in 0.0f64..2.0, t in 0.0f64..2.0) {
        let mut g = Gen::new(seed);
        let a = g.matrix(n, n);
        let a = a.scale_real(2.0 / a.one_norm().max(1e-300)).scale_real(g.unit());
        let lhs = matexp(&a, s).matmul(&matexp(&a, t));
        prop_assert!(lhs.max_abs_diff(&matexp(&a, s + t)) <= 1e-10);
    }

    #[test]
    fn matexp_of_anti_hermitian_is_unitary(seed in any::<u64>(), n in 1usize..8, t in -3.0f64..3.0) {
        let mut g = Gen::new(seed);
        let h = g.hermitian(n);
        let u = matexp(&h.scale(Complex64::new(0.0, -1.0)), t);
        prop_assert!(u.unitarity_deviation() <= 1e-10);
    }

    #[test]
    fn eigenvalues_of_rotated_diagonal(seed in any::<u64>(), n in 1usize..8) {
        let mut g = Gen::new(seed);
        let d: Vec<f64> = (0..n).map(|_| g.range(-5.0, 5.0)).collect();
        let u = g.unitary(n);
        let a = u.conjugate_by(&ComplexMatrix::real_diagonal(&d));
        let mut want = d.clone();
        want.sort_by(f64::total_cmp);
        let got = hermitian_eigenvalues(&a).unwrap();
        for (x, y) in got.iter().zip(&want) {
            prop_assert!((x - y).abs() <= 1e-9, "{got:?} vs {want:?}");
        }
    }
}

/// Taylor series with many terms and no scaling, for small norms.
fn plain_taylor(a: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let n = a.rows();
    let m = a.scale_real(t);
    let mut term = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::identity(n);
    for k in 1..60 {
        term = term.matmul(&m).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    sum
}

#[test]
fn matexp_against_unscaled_series() {
    let mut g = Gen::new(5);
    for n in [1, 2, 4, 8, 16] {
        let a = g.matrix(n, n);
        let a = a.scale_real(1.5 / a.one_norm());
        for t in [0.3, 1.0, 2.0] {
            let bound = 1e-12 * (t * a.one_norm()).exp();
            assert!(matexp(&a, t).max_abs_diff(&plain_taylor(&a, t)) <= bound, "n = {n}, t = {t}");
        }
    }
}

#[test]
fn matexp_reproduces_spin_unitary() {
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};
    let zero = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let sx = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
    let sy = ComplexMatrix::new(2, 2, vec![zero, -i, i, zero]).unwrap();
    let h = &kron(&sx, &sx).scale_real(FRAC_PI_3) + &kron(&sy, &sy).scale_real(FRAC_PI_6);
    let u = matexp(&h.scale(-i), 1.0);
    assert!(u.max_abs_diff(&spin_closed_form_unitary(FRAC_PI_3, FRAC_PI_6, 1.0)) <= 1e-9);
}

/// Leibniz expansion of `det(J − λI)`.
fn char_poly_at(j: &ComplexMatrix, lambda: f64) -> Complex64 {
    fn perms(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                perms(k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let n = j.rows();
    let mut all = Vec::new();
    perms(n, &mut Vec::new(), &mut vec![false; n], &mut all);
    let shifted = &ComplexMatrix::identity(n).scale_real(-lambda) + j;
    all.iter()
        .map(|p| {
            let inversions =
                (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
            let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
            (0..n).map(|r| shifted[(r, p[r])]).product::<Complex64>() * sign
        })
        .sum()
}

#[test]
fn choi_spectrum_against_characteristic_polynomial() {
    let q = StochasticMatrix::from_rows(&[[0.5, 0.5], [0.5, 0.5]]).unwrap();
    let choi = phi_of_q(&q).choi().clone();
    let ev = hermitian_eigenvalues(&choi).unwrap();
    assert!(ev.iter().all(|&e| e >= -1e-10));
    for &e in &ev {
        assert!(char_poly_at(&choi, e).norm() <= 1e-12);
    }
    // every root is 1/2: det(J − λI) = (1/2 − λ)^4
    for lambda in [-1.0, 0.0, 0.25, 2.0] {
        let want: f64 = (0.5_f64 - lambda).powi(4);
        assert!((char_poly_at(&choi, lambda).re - want).abs() <= 1e-12);
    }
}
