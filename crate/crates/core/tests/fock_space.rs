use std::f64::consts::PI;

use mexhat_core::fock_space::{
    coherent_p0_overlap, fock_inner, g_to_fock, p0_overlap, position_wavefunction,
    position_wavefunctions, weight_via_coherent_integral, FockVector, GCoefficients, PolarGrid,
};
use mexhat_core::math_core::{admissibility_weight, gauss_hermite_rule};
use mexhat_core::transform_engine::linspace;
use mexhat_core::wavelet_builder::{build_wavelet, build_wavelet_ungated, l2_norm};
use num_complex::Complex64;
use proptest::prelude::*;

fn g(v: &[f64]) -> GCoefficients {
    GCoefficients::new(v.to_vec()).unwrap()
}

#[test]
fn coherent_integral_reproduces_weight_table() {
    for n in 0..=4 {
        let w = weight_via_coherent_integral(n, 8.0, PolarGrid::default()).unwrap();
        let exact = admissibility_weight(n).unwrap();
        assert!((w / exact - 1.0).abs() < 1e-5, "n = {n}: {w}");
    }
}

#[test]
fn fock_expansion_matches_position_space() {
    let coeffs = g(&[
        1.0, 0.3, 2.0, -0.7, 4.0, 0.0, -1.0, 0.2, 0.05, 0.0, 0.0, 0.0, 0.01,
    ]);
    let v = g_to_fock(&coeffs, 16).unwrap();
    let w = build_wavelet_ungated(&coeffs).unwrap();
    for x in linspace(-6.0, 6.0, 101) {
        let fock = v.position_value(x);
        let direct = w.evaluate(x);
        assert!(fock.im == 0.0);
        assert!(
            (fock.re - direct).abs() < 1e-10 * (1.0 + direct.abs()),
            "x = {x}"
        );
    }
}

#[test]
fn basis_states_are_wavefunctions() {
    for n in 0..=12 {
        let v = FockVector::basis(n, 16).unwrap();
        for x in linspace(-6.0, 6.0, 101) {
            assert!((v.position_value(x).re - position_wavefunction(n, x)).abs() < 1e-14);
        }
    }
}

#[test]
fn wavefunctions_are_orthonormal() {
    // φ_m φ_n = e^{-x²} × polynomial of degree m + n, exact under GH with 16 nodes
    let rule = gauss_hermite_rule(16).unwrap();
    for m in 0..=12 {
        for n in 0..=12 {
            let v = rule.integrate(|x| {
                let phi = position_wavefunctions(12, x);
                phi[m] * phi[n] * (x * x).exp()
            });
            let expected = if m == n { 1.0 } else { 0.0 };
            assert!((v - expected).abs() < 1e-12, "({m}, {n}): {v}");
        }
    }
}

#[test]
fn inner_product_is_l2_norm_squared() {
    for coeffs in [
        vec![0.5, 0.0, -0.5],
        vec![-1.0, 0.0, -2.0, 0.0, 1.0],
        vec![0.5, 0.3, -0.5, 0.2],
    ] {
        let c = g(&coeffs);
        let v = g_to_fock(&c, 32).unwrap();
        let inner = fock_inner(&v, &v).unwrap();
        let norm = l2_norm(&build_wavelet(&c).unwrap());
        assert!((inner.re - norm * norm).abs() < 1e-12, "g = {coeffs:?}");
        assert_eq!(inner.im, 0.0);
    }
    let hat = g_to_fock(&g(&[0.5, 0.0, -0.5]), 8).unwrap();
    assert!((fock_inner(&hat, &hat).unwrap() - Complex64::new(0.75, 0.0)).norm() < 1e-15);
}

#[test]
fn coherent_overlap_at_real_points() {
    // ⟨p=0|z⟩ for real z is π^{-1/4} e^{z²/2}
    for z in [0.0, 0.5, -1.2] {
        let v = coherent_p0_overlap(Complex64::new(z, 0.0));
        assert!((v.re - PI.powf(-0.25) * (z * z / 2.0).exp()).abs() < 1e-15);
    }
    let v = coherent_p0_overlap(Complex64::new(0.0, 1.0));
    assert!((v.re - PI.powf(-0.25) * (-0.5f64).exp()).abs() < 1e-15);
}

proptest! {
    #[test]
    fn p0_overlap_is_linear(
        a in prop::collection::vec(-2.0f64..2.0, 1..=10),
        b in prop::collection::vec(-2.0f64..2.0, 1..=10),
        alpha in -3.0f64..3.0,
    ) {
        let n = a.len().max(b.len());
        let at = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(0.0);
        let combo: Vec<f64> = (0..n).map(|k| alpha * at(&a, k) + at(&b, k)).collect();
        let lhs = p0_overlap(&g(&combo));
        let rhs = alpha * p0_overlap(&g(&a)) + p0_overlap(&g(&b));
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn odd_coefficients_never_touch_p0(odd in prop::collection::vec(-2.0f64..2.0, 1..=6)) {
        let mut v = vec![0.0; 2 * odd.len()];
        for (k, x) in odd.iter().enumerate() {
            v[2 * k + 1] = *x;
        }
        prop_assert_eq!(p0_overlap(&g(&v)), 0.0);
    }
}
