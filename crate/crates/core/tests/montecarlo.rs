use winding_core::density::{density_f2, interval_probability, DensityQuery};
use winding_core::montecarlo::{
    estimate_interval_prob, histogram_density, sample_batch, simulate_winding, SimConfig,
};
use winding_core::{Error, QuadratureSpec};

fn angles(cfg: &SimConfig) -> Vec<f64> {
    sample_batch(cfg)
        .unwrap()
        .into_iter()
        .map(|s| s.theta_t)
        .collect()
}

#[test]
fn paths_are_reproducible_and_independent_of_batch() {
    let cfg = SimConfig::new(10.0, 1.0, 50, 7).unwrap();
    let a = sample_batch(&cfg).unwrap();
    let b = sample_batch(&cfg).unwrap();
    assert_eq!(a, b);
    // path i does not depend on how many paths are drawn
    let single = simulate_winding(
        &SimConfig {
            n_paths: 1000,
            ..cfg
        },
        17,
    )
    .unwrap();
    assert_eq!(single, a[17]);
    let other = sample_batch(&SimConfig {
        master_seed: 8,
        ..cfg
    })
    .unwrap();
    assert_ne!(a, other);
}

#[test]
fn interval_frequencies_match_exact_probabilities() {
    let cfg = SimConfig::new(2.0, 1.0, 20_000, 3).unwrap();
    let theta = angles(&cfg);
    let spec = QuadratureSpec::default();
    for (lo, hi) in [(0.0, f64::INFINITY), (-0.5, 0.5), (1.0, 3.0)] {
        let (p, se) = estimate_interval_prob(&theta, lo, hi).unwrap();
        let exact = interval_probability(lo, hi, 2.0, 1.0, &spec).unwrap();
        assert!(
            (p - exact).abs() < 4.0 * se.max(1e-3),
            "({lo},{hi}): {p} vs {exact}"
        );
    }
}

#[test]
fn histogram_matches_density() {
    let cfg = SimConfig::new(1.0, 1.0, 20_000, 11).unwrap();
    let theta = angles(&cfg);
    let edges: Vec<f64> = (0..=12).map(|i| -3.0 + 0.5 * i as f64).collect();
    let est = histogram_density(&theta, &edges).unwrap();
    let spec = QuadratureSpec::default();
    let mut bad = 0;
    for i in 0..est.bin_count() {
        let mid = 0.5 * (edges[i] + edges[i + 1]);
        let f = density_f2(&DensityQuery::new(mid, 1.0, 1.0).unwrap(), &spec).unwrap();
        // midpoint rule is good enough at this bin width for a loose check
        if (est.densities[i] - f).abs() > 4.0 * est.std_errors[i] + 0.02 * f {
            bad += 1;
        }
    }
    assert!(bad <= 1, "{bad} bins off");
}

#[test]
fn coarser_steps_change_little() {
    let fine = SimConfig::new(5.0, 1.0, 10_000, 5).unwrap();
    let coarse = SimConfig {
        h_max: fine.h_max * 10.0,
        kappa: fine.kappa * 4.0,
        ..fine
    };
    let (pf, sf) = estimate_interval_prob(&angles(&fine), -1.0, 1.0).unwrap();
    let (pc, sc) = estimate_interval_prob(&angles(&coarse), -1.0, 1.0).unwrap();
    assert!((pf - pc).abs() < 4.0 * (sf * sf + sc * sc).sqrt());
}

#[test]
fn samples_are_symmetric() {
    let theta = angles(&SimConfig::new(10.0, 1.0, 10_000, 21).unwrap());
    let (pos, se) = estimate_interval_prob(&theta, 0.0, f64::INFINITY).unwrap();
    assert!((pos - 0.5).abs() < 4.0 * se);
    let median_abs = {
        let mut a: Vec<f64> = theta.iter().map(|v| v.abs()).collect();
        a.sort_by(f64::total_cmp);
        a[a.len() / 2]
    };
    assert!(median_abs > 0.0 && median_abs.is_finite());
}

#[test]
fn invalid_configs_are_rejected() {
    assert!(matches!(
        SimConfig::new(0.0, 1.0, 10, 0),
        Err(Error::InvalidConfig(_))
    ));
    assert!(SimConfig::new(1.0, 1.0, 0, 0).is_err());
    let cfg = SimConfig::new(1.0, 1.0, 10, 0).unwrap();
    assert!(SimConfig { kappa: 0.0, ..cfg }.validate().is_err());
    assert!(SimConfig { h_max: 2.0, ..cfg }.validate().is_err());
    assert!(histogram_density(&[0.0], &[1.0, 0.0]).is_err());
    assert!(estimate_interval_prob(&[0.0], 1.0, 1.0).is_err());
}
