use fh_lab::analysis::{
    area_weight, carleson_box_average, fejer_riesz_check, hardy_inner_product_quadrature, schwarz_pick_check,
    v_phi_coefficients, weight_positivity, ArcBox, QuadratureSpec,
};
use fh_lab::symbols::catalog::{constant, hilbert, lens, moebius};
use fh_lab::symbols::PowerSeries;
use fh_lab::Complex64 as C64;
use proptest::prelude::*;

#[test]
fn weight_is_cubic_at_the_circle() {
    for s in [1e-2, 1e-3, 1e-4] {
        let w = area_weight(1.0 - s);
        assert!((w / (2.0 / 3.0 * s * s * s) - 1.0).abs() < 2.0 * s, "{s}: {w}");
    }
    assert!(weight_positivity(2000).1);
}

#[test]
fn constant_map_box_average_is_integrand_times_box_area() {
    // |c|^n (1 - |c|)^r is constant; the normalized area of S(I) is (L/2pi)(1 - (1 - L)^2)
    let phi = constant(C64::new(0.5, 0.0)).unwrap();
    let arc = ArcBox::new(1.0, 0.3).unwrap();
    let q = QuadratureSpec::new(8, 32, 1e-10);
    let got = carleson_box_average(&phi, 3, 2.0, &arc, &q).unwrap();
    let area = 0.3 / (2.0 * std::f64::consts::PI) * (1.0 - 0.7f64 * 0.7);
    let want = 0.5f64.powi(3) * 0.5f64.powi(2) * area / 0.3;
    assert!((got - want).abs() < 1e-10 * want, "{got} vs {want}");
}

#[test]
fn hilbert_symbol_expansion_in_the_lens_map_starts_at_zero() {
    let v = v_phi_coefficients(&hilbert(), &lens(), 8).unwrap();
    assert_eq!(v.series.coefficient(0), C64::new(0.0, 0.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn schwarz_pick_holds_for_moebius_maps(re in -0.45f64..0.45, im in -0.45f64..0.45, d in 1usize..=4) {
        let phi = moebius(C64::new(re, im)).unwrap();
        let r = schwarz_pick_check(&phi, d, 2000, 7).unwrap();
        prop_assert!(r.passes(1e-12), "{:?}", r);
    }

    #[test]
    fn fejer_riesz_slack_is_nonnegative(coeffs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..20)) {
        let v = PowerSeries::explicit("v", coeffs.into_iter().map(|(a, b)| C64::new(a, b)).collect());
        prop_assert!(fejer_riesz_check(&v).unwrap().slack >= -1e-12);
    }

    #[test]
    fn inner_product_is_hermitian(a in proptest::collection::vec(-1.0f64..1.0, 1..8), b in proptest::collection::vec(-1.0f64..1.0, 1..8)) {
        let f = PowerSeries::explicit_real("f", &a);
        let g = PowerSeries::explicit_real("g", &b);
        let q = QuadratureSpec::default();
        let fg = hardy_inner_product_quadrature(&f, &g, &q).unwrap();
        let gf = hardy_inner_product_quadrature(&g, &f, &q).unwrap();
        prop_assert!((fg - gf.conj()).norm() < 1e-10);
    }
}
