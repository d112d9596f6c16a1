use proptest::prelude::*;

use winding_core::expansion::{
    a_theta, a_theta_trig, eval_poly, fraction_pair, fraction_pair_expansion, fraction_pair_params,
    g_poly, gexp_coefficients, gexp_remainder, gexp_split, p_poly, p_poly_complex, RationalParams,
};
use winding_core::montecarlo::histogram_density;

fn params() -> impl Strategy<Value = RationalParams> {
    (-10.0..10.0_f64, -5.0..5.0_f64, 0.05..10.0_f64).prop_map(|(b, c, gap)| RationalParams {
        b,
        c,
        d: 0.25 * c * c + gap,
    })
}

proptest! {
    #[test]
    fn rational_expansion_is_exact(p in params(), x in -4.0..4.0_f64, n in 0usize..=12) {
        let (sum, q) = gexp_split(&p, x, n).unwrap();
        let a = gexp_coefficients(&p, n).unwrap();
        let terms: f64 = a[1..].iter().enumerate().map(|(k, v)| (v * x.powi(k as i32)).abs()).sum();
        let g = p.eval(x);
        let scale = 1.0_f64.max(g.abs()).max(terms).max(q.abs());
        prop_assert!((g - sum - q).abs() <= 1e-12 * scale);
    }

    #[test]
    fn rational_coefficients_obey_recurrence(p in params()) {
        let a = gexp_coefficients(&p, 12).unwrap();
        for n in 0..=10 {
            let r = a[n + 3] + p.c * a[n + 2] + p.d * a[n + 1];
            let scale = a[n + 3].abs() + (p.c * a[n + 2]).abs() + (p.d * a[n + 1]).abs();
            prop_assert!(r.abs() <= 1e-13 * scale.max(1.0));
        }
    }

    #[test]
    fn fraction_pair_expansion_is_exact(
        theta in -10.0..10.0_f64,
        x in 0.0..4.0_f64,
        b in 0.0..10.0_f64,
        n in 0usize..=8,
    ) {
        prop_assume!((2.0 * b * theta - std::f64::consts::PI).abs() > 0.05);
        let lhs = fraction_pair(theta, x, b).unwrap();
        let (sum, q) = fraction_pair_expansion(theta, x, b, n).unwrap();
        let (plus, minus) = fraction_pair_params(theta, b);
        let pieces = (gexp_remainder(&plus, x, n).unwrap().abs()
            + gexp_remainder(&minus, x, n).unwrap().abs())
            / (1.0 + theta * theta);
        let scale = 1.0_f64.max(lhs.abs()).max(sum.abs()).max(pieces);
        prop_assert!((lhs - sum - q).abs() <= 1e-12 * scale);
    }

    #[test]
    fn angular_coefficients_bounded_and_dual(theta in -50.0..50.0_f64, n in 0usize..=12) {
        let a = a_theta(n, theta);
        prop_assert!(a.abs() <= 1.0 + 1e-12);
        prop_assert!((a - a_theta_trig(n, theta)).abs() <= 1e-12);
        prop_assert_eq!(a, a_theta(n, theta));
    }

    #[test]
    fn b_polynomials_dual(b in -10.0..10.0_f64, n in 0usize..=8) {
        let x = p_poly(n, b);
        let y = p_poly_complex(n, b);
        let scale = (4.0 * b * b + std::f64::consts::PI.powi(2)).powf(0.5 * n as f64);
        prop_assert!((x - y).abs() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn g_polynomials_are_even(theta in -20.0..20.0_f64, n in 0usize..=12) {
        let g = g_poly(n).unwrap();
        prop_assert_eq!(eval_poly(&g, theta), eval_poly(&g, -theta));
    }

    #[test]
    fn histogram_mass_at_most_one(samples in prop::collection::vec(-10.0..10.0_f64, 1..200)) {
        let edges: Vec<f64> = (0..=8).map(|i| -4.0 + i as f64).collect();
        let est = histogram_density(&samples, &edges).unwrap();
        let mass: f64 = (0..est.bin_count()).map(|i| est.densities[i] * est.width(i)).sum();
        let inside = samples.iter().filter(|v| (-4.0..=4.0).contains(*v)).count() as f64;
        prop_assert!((mass - inside / samples.len() as f64).abs() < 1e-12);
    }
}
