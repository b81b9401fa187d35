use std::f64::consts::E;

use mexhat_core::fock_space::{g_to_fock, FockVector, GCoefficients};
use mexhat_core::operator_lab::{
    expm, matrix_element_oracle, max_block_deviation, pure_squeeze_check, quantum_transform,
    squeeze_generator, squeeze_translate_matrix, standard_grid, two_route_equivalence,
};
use mexhat_core::transform_engine::{transform_analytic, AnalyticSignal};
use mexhat_core::wavelet_builder::{build_wavelet, build_wavelet_ungated};
use mexhat_core::Error;
use ndarray::Array2;
use num_complex::Complex64;
use proptest::prelude::*;

fn g(v: &[f64]) -> GCoefficients {
    GCoefficients::new(v.to_vec()).unwrap()
}

const HAT: [f64; 3] = [0.5, 0.0, -0.5];
const CASE2: [f64; 5] = [-1.0, 0.0, -2.0, 0.0, 1.0];

#[test]
fn matrix_agrees_with_integral_definition() {
    for mu in [0.5, 1.0, E, 2.0] {
        for s in [0.0, 1.0, -1.0] {
            let u = squeeze_translate_matrix(mu, s, 64).unwrap();
            for m in 0..=12 {
                for n in 0..=12 {
                    let oracle = matrix_element_oracle(mu, s, m, n).unwrap();
                    let got = u.element(m, n);
                    assert!(got.im == 0.0);
                    assert!(
                        (got.re - oracle).abs() < 1e-8,
                        "μ = {mu}, s = {s}, ⟨{m}|U|{n}⟩: {} vs {oracle}",
                        got.re
                    );
                }
            }
        }
    }
}

#[test]
fn column_example_at_small_dimension() {
    let u = squeeze_translate_matrix(2.0, 1.0, 32).unwrap();
    for n in 0..=8 {
        for m in 0..32 {
            let oracle = matrix_element_oracle(2.0, 1.0, m, n).unwrap();
            assert!((u.element(m, n).re - oracle).abs() < 1e-8, "({m}, {n})");
        }
    }
}

#[test]
fn squeeze_special_case() {
    for mu in [0.5, 2.0] {
        let report = pure_squeeze_check(mu, 64).unwrap();
        assert_eq!(report.block, 16);
        assert!(
            report.max_deviation < 1e-8,
            "μ = {mu}: {}",
            report.max_deviation
        );
    }
    assert!(pure_squeeze_check(1.0, 64).unwrap().max_deviation < 1e-15);
}

#[test]
fn inverse_scales_compose_to_identity() {
    let dim = 64;
    let a = squeeze_translate_matrix(0.5, 0.0, dim).unwrap();
    let b = squeeze_translate_matrix(2.0, 0.0, dim).unwrap();
    let product = a.entries().dot(b.entries());
    let eye = Array2::<Complex64>::eye(dim);
    assert!(max_block_deviation(&product, &eye, 8) < 1e-6);
}

#[test]
fn expm_of_zero_generator_is_identity() {
    let e = expm(&squeeze_generator(0.0, 16));
    assert_eq!(e, Array2::<Complex64>::eye(16));
}

#[test]
fn parity_is_exact() {
    for mu in [0.5, 1.3, E] {
        let u = squeeze_translate_matrix(mu, 0.0, 32).unwrap();
        for m in 0..32 {
            for n in 0..32 {
                if (m + n) % 2 == 1 {
                    assert_eq!(u.element(m, n), Complex64::new(0.0, 0.0));
                }
            }
        }
        assert!(matrix_element_oracle(mu, 0.0, 3, 0).unwrap().abs() < 1e-14);
        assert!(matrix_element_oracle(mu, 0.0, 2, 5).unwrap().abs() < 1e-14);
    }
}

#[test]
fn low_lying_columns_are_nearly_isometric() {
    for (mu, s) in [(0.8, 0.5), (1.25, -0.3), (1.0, 1.0)] {
        let u = squeeze_translate_matrix(mu, s, 64).unwrap();
        assert!(
            u.truncation_bound() < 1e-12,
            "({mu}, {s}): {}",
            u.truncation_bound()
        );
    }
    // strong squeezing pushes column 24 past the cutoff; the bound says so
    let coarse = squeeze_translate_matrix(0.5, 0.0, 64)
        .unwrap()
        .truncation_bound();
    let fine = squeeze_translate_matrix(0.5, 0.0, 96)
        .unwrap()
        .truncation_bound();
    assert!(coarse > 1e-3 && fine < coarse);
}

#[test]
fn two_routes_agree_on_standard_grid() {
    let grid = standard_grid(5, 5);
    assert_eq!(grid.len(), 25);
    let report = two_route_equivalence(&g(&HAT), &g(&CASE2), &grid, 64).unwrap();
    assert!(report.max_deviation < 1e-6, "{report:?}");

    let unit_row: Vec<(f64, f64)> = [-2.0, -1.0, 0.0, 1.0, 2.0]
        .iter()
        .map(|&s| (1.0, s))
        .collect();
    let r = two_route_equivalence(&g(&HAT), &g(&CASE2), &unit_row, 64).unwrap();
    assert!(r.max_deviation < 1e-12, "{r:?}");
}

#[test]
fn deviation_does_not_grow_with_dimension() {
    let grid = standard_grid(5, 5);
    let small = two_route_equivalence(&g(&HAT), &g(&CASE2), &grid, 48).unwrap();
    let large = two_route_equivalence(&g(&HAT), &g(&CASE2), &grid, 96).unwrap();
    assert!(
        large.max_deviation <= small.max_deviation,
        "{small:?} vs {large:?}"
    );
}

#[test]
fn vacuum_signal_at_generic_scale() {
    let r = two_route_equivalence(&g(&HAT), &g(&[1.0]), &[(E, 0.0)], 64).unwrap();
    assert!(r.max_deviation < 1e-8);

    let psi = g_to_fock(&g(&HAT), 64).unwrap();
    let vac = FockVector::basis(0, 64).unwrap();
    let q = quantum_transform(&psi, &vac, 2.0, 1.0).unwrap();
    let w = build_wavelet(&g(&HAT)).unwrap();
    let f = AnalyticSignal::from(&build_wavelet_ungated(&g(&[1.0])).unwrap());
    let integral = transform_analytic(&w, &f, 2.0, 1.0).unwrap();
    assert!((q.re - integral).abs() < 1e-6);
}

#[test]
fn heavy_tails_are_refused() {
    let mut long = vec![0.0; 20];
    long[0] = -1.0;
    long[19] = 1.0;
    let err = two_route_equivalence(&g(&HAT), &g(&long), &[(1.0, 0.0)], 22).unwrap_err();
    assert!(matches!(err, Error::Truncation(_)));
    let err = two_route_equivalence(&g(&[1.0]), &g(&HAT), &[(1.0, 0.0)], 16).unwrap_err();
    assert!(matches!(err, Error::Inadmissible { .. }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn parity_for_random_scales(mu in 0.3f64..3.0) {
        let u = squeeze_translate_matrix(mu, 0.0, 16).unwrap();
        for m in 0..16 {
            for n in ((m + 1) % 2..16).step_by(2) {
                prop_assert_eq!(u.element(m, n).norm(), 0.0);
            }
        }
    }

    #[test]
    fn random_elements_match_oracle(mu in 0.5f64..2.0, s in -1.5f64..1.5, m in 0usize..8, n in 0usize..8) {
        let u = squeeze_translate_matrix(mu, s, 40).unwrap();
        let oracle = matrix_element_oracle(mu, s, m, n).unwrap();
        prop_assert!((u.element(m, n).re - oracle).abs() < 1e-8);
    }
}
