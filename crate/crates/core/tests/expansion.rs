// Reference values are kept at the precision they were computed to.
#![allow(clippy::excessive_precision)]

use std::f64::consts::{LN_2, PI};

use winding_core::density::{density_f2, interval_probability, DensityQuery};
use winding_core::expansion::{
    a_theta, c_coeff, c_coeff_finite, eval_poly, g_poly, g_quadrature, lll_coefficients,
    lll_correction, log_sqrt, theorem1_sum, theorem2_sum, ExpansionCoefficients, MAX_ORDER,
};
use winding_core::numerics::{EULER_GAMMA, SQRT_PI};
use winding_core::QuadratureSpec;

fn scaled_density(theta: f64, t: f64, spec: &QuadratureSpec) -> f64 {
    log_sqrt(t) * density_f2(&DensityQuery::new(theta, t, 1.0).unwrap(), spec).unwrap()
}

#[test]
fn known_constants() {
    assert!((c_coeff(0, 1.0).unwrap() - SQRT_PI).abs() < 1e-14);
    assert!((c_coeff(1, 1.0).unwrap() - SQRT_PI * (LN_2 - EULER_GAMMA)).abs() < 1e-13);
    assert!((g_poly(0).unwrap()[0] - 2.0 * SQRT_PI).abs() < 1e-14);
    let g1 = g_poly(1).unwrap();
    assert!((g1[0] - -0.2054832613700666).abs() < 1e-13);
    assert!((g1[0] - SQRT_PI * (EULER_GAMMA - LN_2)).abs() < 1e-13);
    // g_1(0) and c_1(1) are the same integral with opposite sign
    assert!((g1[0] + c_coeff(1, 1.0).unwrap()).abs() < 1e-13);
    let spec = QuadratureSpec::default();
    assert!((g_quadrature(1, 0.0, &spec).unwrap() - g1[0]).abs() < 1e-10);
}

#[test]
fn g_polynomials_are_even_with_degree_n() {
    for n in 0..=MAX_ORDER {
        let g = g_poly(n).unwrap();
        assert!(g.len() <= n + 1);
        for (k, c) in g.iter().enumerate() {
            if k % 2 == 1 {
                assert_eq!(*c, 0.0, "g_{n} has odd coefficient {k}");
            }
        }
    }
    assert!(g_poly(MAX_ORDER + 1).is_err());
}

#[test]
fn finite_t_coefficients() {
    let spec = QuadratureSpec::default();
    // C_0 = √π erfc(√(2s)), s = 1/4t; mpmath values
    for (t, want) in [(1e2, 1.6312678437956994678), (1e4, 1.7583119509805099805)] {
        let got = c_coeff_finite(0, t, 1.0, &spec).unwrap();
        assert!((got - want).abs() < 1e-10, "C_0({t}) = {got}");
    }
    let c4 = c_coeff_finite(4, 1e4, 1.0, &spec).unwrap();
    assert!((c4 - -146.1186).abs() < 1e-3, "C_4(1e4) = {c4}");
    for (t, gap) in [(1e8, 0.869), (1e12, 0.0296)] {
        let d = (c_coeff_finite(3, t, 1.0, &spec).unwrap() - c_coeff(3, 1.0).unwrap()).abs();
        assert!((d - gap).abs() < 0.01 * gap, "|C_3 - c_3| at {t} = {d}");
    }
}

#[test]
fn finite_t_coefficients_under_rescaling() {
    // (t, ρ) → (c²t, cρ) keeps ρ²/4t but shifts b by −log c, so
    // C_n(c²t; cρ) = Σ_k C(n,k) (−2 log c)^{n−k} C_k(t; ρ).
    let spec = QuadratureSpec::default();
    let c: f64 = 2.0;
    let shift = -2.0 * c.ln();
    let base: Vec<f64> = (0..=4)
        .map(|k| c_coeff_finite(k, 1e4, 1.0, &spec).unwrap())
        .collect();
    for n in 0..=4 {
        let moved = c_coeff_finite(n, c * c * 1e4, c, &spec).unwrap();
        let mut expect = 0.0;
        let mut binom = 1.0;
        for (k, ck) in base.iter().enumerate().take(n + 1) {
            expect += binom * shift.powi((n - k) as i32) * ck;
            binom *= (n - k) as f64 / (k + 1) as f64;
        }
        assert!(
            (moved - expect).abs() <= 1e-9 * expect.abs().max(1.0),
            "n={n}: {moved} vs {expect}"
        );
    }
}

#[test]
fn low_order_coefficients_converge_monotonically() {
    let spec = QuadratureSpec::default();
    for n in 0..=2 {
        let limit = c_coeff(n, 1.0).unwrap();
        let gaps: Vec<f64> = [1e2, 1e3, 1e4, 1e5]
            .iter()
            .map(|&t| (c_coeff_finite(n, t, 1.0, &spec).unwrap() - limit).abs())
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "n={n}: {gaps:?}");
    }
}

#[test]
fn unscaled_expansion_residuals() {
    let spec = QuadratureSpec::default();
    // residual log√t·f(0,t) − partial sum, N = 0..3
    let table = [
        (1e4, [-0.0163683, -0.0123617, 0.0061047, -0.0014499]),
        (1e8, [-0.0057682, -0.0037649, 0.00085173, -9.26e-5]),
    ];
    for (t, want) in table {
        let exact = scaled_density(0.0, t, &spec);
        for (n, w) in want.iter().enumerate() {
            let r = exact - theorem2_sum(0.0, t, n).unwrap();
            assert!((r - w).abs() < 2e-3 * w.abs(), "t={t} N={n}: {r}");
        }
    }
}

#[test]
fn scaled_expansion_n1_residual_is_second_order() {
    let spec = QuadratureSpec::default();
    let residual = |t: f64| {
        let l = log_sqrt(t);
        (scaled_density(1.0 * l, t, &spec) - theorem1_sum(1.0, t, 1.0, 1, &spec).unwrap()).abs()
    };
    let ratio = residual(1e4) / residual(1e8);
    assert!((ratio - 4.0).abs() <= 1.2, "ratio {ratio}");
}

#[test]
fn local_limit_correction() {
    let spec = QuadratureSpec::default();
    let g = lll_coefficients(0.0, 1.0, 1).unwrap();
    assert!((g[0] - 1.0 / PI).abs() < 1e-14);
    assert!((g[1] - (EULER_GAMMA - LN_2) / (2.0 * PI)).abs() < 1e-14);
    let residual = |t: f64| {
        log_sqrt(t) * interval_probability(0.0, 1.0, t, 1.0, &spec).unwrap()
            - lll_correction(0.0, 1.0, t, 1).unwrap()
    };
    let (r4, r8) = (residual(1e4), residual(1e8));
    assert!((r4 - -0.016208).abs() < 1e-4, "{r4}");
    assert!((r8 - -0.0049075).abs() < 1e-4, "{r8}");
    // an asymmetric interval
    let direct = log_sqrt(1e6) * interval_probability(-1.0, 2.0, 1e6, 1.0, &spec).unwrap();
    let approx = lll_correction(-1.0, 2.0, 1e6, 2).unwrap();
    assert!((direct - approx).abs() < 0.05 * direct);
}

#[test]
fn angular_coefficients() {
    for theta in [-3.0, 0.0, 0.5, 10.0] {
        assert!((a_theta(0, theta) - 1.0 / (1.0 + theta * theta).sqrt()).abs() < 1e-15);
        for n in 0..=MAX_ORDER {
            assert!(a_theta(n, theta).abs() <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn coefficient_bundle() {
    let spec = QuadratureSpec::default();
    let all = ExpansionCoefficients::compute(0.5, 1e4, 1.0, 3, &spec).unwrap();
    assert_eq!(all.a_theta.len(), 4);
    assert_eq!(all.g.len(), 4);
    assert_eq!(all.c_finite[2], c_coeff_finite(2, 1e4, 1.0, &spec).unwrap());
    assert!((eval_poly(&all.g[0], 0.5) - 2.0 * SQRT_PI).abs() < 1e-14);
    assert!(ExpansionCoefficients::compute(0.5, 1.0, 1.0, 3, &spec).is_err());
}
