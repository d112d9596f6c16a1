//! Invariant suites behind `winding verify`.
//!
//! Each check reports the largest error it observed and the threshold it was
//! held to. Exactness checks of the finite expansions measure the error
//! relative to the size of the quantities being summed, since the terms can
//! be many orders of magnitude larger than the result.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use winding_core::density::{density_f1, density_f2, total_mass, DensityQuery};
use winding_core::expansion::{
    a_theta, a_theta_trig, c_coeff, c_coeff_finite, c_coeff_quadrature, eval_poly, fraction_pair,
    fraction_pair_expansion, fraction_pair_params, fraction_pair_term, g_poly, g_quadrature,
    gexp_coefficients, gexp_remainder, gexp_split, p_poly, p_poly_complex, RationalParams,
};
use winding_core::numerics::{EULER_GAMMA, SQRT_PI};
use winding_core::{QuadratureSpec, Result};

use crate::args::Suite;
use crate::table::{ColumnType, ResultTable};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_error: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `max_error <= threshold`.
    pub fn bounded(name: &str, max_error: f64, threshold: f64) -> Self {
        Check {
            name: name.to_owned(),
            max_error,
            threshold,
            pass: max_error <= threshold,
        }
    }

    /// A yes/no property; `max_error` carries a diagnostic value.
    pub fn holds(name: &str, pass: bool, diagnostic: f64) -> Self {
        Check {
            name: name.to_owned(),
            max_error: diagnostic,
            threshold: 0.0,
            pass,
        }
    }
}

pub const RANDOM_DRAWS: usize = 10_000;

/// Random `(b, c, d)` with `4d − c²` at least 0.2, away from the double-root
/// boundary where the closed form divides by `√(4d − c²)`.
pub fn random_params(rng: &mut ChaCha8Rng) -> RationalParams {
    let b = rng.random_range(-10.0..10.0);
    let c = rng.random_range(-5.0..5.0);
    let d = 0.25 * c * c + rng.random_range(0.05..10.0);
    RationalParams { b, c, d }
}

/// Largest scaled error of `g(x) = Σ a_n xⁿ + q_N(x)` over random draws,
/// `|x| ≤ 4`, `N ≤ 12`.
pub fn gexp_identity_error(seed: u64, draws: usize) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..draws {
        let p = random_params(&mut rng);
        let x = rng.random_range(-4.0..=4.0);
        let order = rng.random_range(0..=12);
        let (sum, q) = gexp_split(&p, x, order)?;
        let a = gexp_coefficients(&p, order)?;
        let magnitude: f64 = a[1..]
            .iter()
            .enumerate()
            .map(|(n, an)| (an * x.powi(n as i32)).abs())
            .sum();
        let g = p.eval(x);
        let scale = 1.0_f64.max(g.abs()).max(magnitude).max(q.abs());
        worst = worst.max((g - sum - q).abs() / scale);
    }
    Ok(worst)
}

/// Largest scaled violation of `a_{n+2} + c a_{n+1} + d a_n = 0`, and of
/// `a_0 = 1`, `a_1 = b − c`.
pub fn gexp_recurrence_error(seed: u64, draws: usize) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut worst = 0.0_f64;
    for _ in 0..draws {
        let p = random_params(&mut rng);
        let a = gexp_coefficients(&p, 12)?;
        worst = worst.max((a[1] - 1.0).abs());
        worst = worst.max((a[2] - (p.b - p.c)).abs() / 1.0_f64.max(p.b.abs() + p.c.abs()));
        for n in 0..=10 {
            let (x0, x1, x2) = (a[n + 1], a[n + 2], a[n + 3]);
            let scale = x2.abs() + (p.c * x1).abs() + (p.d * x0).abs();
            worst = worst.max((x2 + p.c * x1 + p.d * x0).abs() / scale.max(f64::MIN_POSITIVE));
        }
    }
    Ok(worst)
}

/// Largest scaled error of the fraction-pair identity
/// `LHS = Σ_{n≤N} term_n xⁿ + Q_N` over random `θ ∈ [−10, 10]`,
/// `x ∈ (0, 4]`, `b ∈ [0, 10]`, `N ≤ 8`.
///
/// Draws with `|2bθ − π| < 0.05` are redrawn: there the two rational
/// functions have a double root and the closed-form coefficients divide by
/// `|2bθ − π|`.
pub fn fraction_pair_identity_error(seed: u64, draws: usize) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let mut worst = 0.0_f64;
    let mut done = 0;
    while done < draws {
        let theta = rng.random_range(-10.0..=10.0);
        let x = 4.0 - rng.random_range(0.0..4.0);
        let b = rng.random_range(0.0..=10.0);
        let order = rng.random_range(0..=8);
        if (2.0 * b * theta - PI).abs() < 0.05 {
            continue;
        }
        done += 1;
        let lhs = fraction_pair(theta, x, b)?;
        let (sum, q) = fraction_pair_expansion(theta, x, b, order)?;
        let magnitude: f64 = (0..=order)
            .map(|n| (fraction_pair_term(n, theta, b) * x.powi(n as i32)).abs())
            .sum();
        // Q_N is rebuilt from two remainders that can be many orders larger
        // than their sum, so their size belongs in the scale.
        let (plus, minus) = fraction_pair_params(theta, b);
        let w = 1.0 + theta * theta;
        let pieces =
            (gexp_remainder(&plus, x, order)?.abs() + gexp_remainder(&minus, x, order)?.abs()) / w;
        let scale = 1.0_f64.max(lhs.abs()).max(magnitude).max(pieces);
        worst = worst.max((lhs - sum - q).abs() / scale);
    }
    Ok(worst)
}

/// Largest ratio `|a_n^{(1)}| / ((4b²+π²)^{n/2} / (2ⁿ (1+θ²)^{(n−1)/2}))` over
/// random draws; at most 1 when the bound holds.
pub fn first_fraction_bound_ratio(seed: u64, draws: usize) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    let mut worst = 0.0_f64;
    let mut done = 0;
    while done < draws {
        let theta = rng.random_range(-10.0..=10.0);
        let b = rng.random_range(0.0..=10.0);
        if (2.0 * b * theta - PI).abs() < 0.05 {
            continue;
        }
        done += 1;
        let (plus, _) = fraction_pair_params(theta, b);
        let a = gexp_coefficients(&plus, 12)?;
        let w = 1.0 + theta * theta;
        for n in 0..=12 {
            let nf = n as f64;
            let bound = (4.0 * b * b + PI * PI).powf(0.5 * nf)
                / (2.0_f64.powi(n) * w.powf(0.5 * (nf - 1.0)));
            worst = worst.max(a[n as usize + 1].abs() / bound);
        }
    }
    Ok(worst)
}

/// Largest `|A_n(θ)|` over `n ≤ 12` and random `θ`.
pub fn a_theta_max_abs(seed: u64, draws: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));
    let mut worst = 0.0_f64;
    for _ in 0..draws {
        let theta = rng.random_range(-50.0..=50.0);
        for n in 0..=12 {
            worst = worst.max(a_theta(n, theta).abs());
        }
    }
    worst
}

/// Largest `|A_n binomial − cos((n+1) atan θ)|` over `n ≤ max_order`.
pub fn a_theta_dual_error(seed: u64, draws: usize, max_order: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(5));
    let mut worst = 0.0_f64;
    for _ in 0..draws {
        let theta = rng.random_range(-20.0..=20.0);
        for n in 0..=max_order {
            worst = worst.max((a_theta(n, theta) - a_theta_trig(n, theta)).abs());
        }
    }
    worst
}

/// Largest `|P_n binomial − Re((2b+iπ)ⁿ)| / |2b+iπ|ⁿ` over `n ≤ max_order`.
pub fn p_poly_dual_error(seed: u64, draws: usize, max_order: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(6));
    let mut worst = 0.0_f64;
    for _ in 0..draws {
        let b = rng.random_range(-10.0..=10.0);
        let modulus = (4.0 * b * b + PI * PI).sqrt();
        for n in 0..=max_order {
            let err = (p_poly(n, b) - p_poly_complex(n, b)).abs();
            worst = worst.max(err / modulus.powi(n as i32));
        }
    }
    worst
}

/// Largest relative gap between `c_n(ρ)` from log-moments and from direct quadrature.
pub fn c_coeff_dual_error(max_order: usize, rho: f64, spec: &QuadratureSpec) -> Result<f64> {
    let mut worst = 0.0_f64;
    for n in 0..=max_order {
        let (a, b) = (c_coeff(n, rho)?, c_coeff_quadrature(n, rho, spec)?);
        worst = worst.max((a - b).abs() / 1.0_f64.max(a.abs()));
    }
    Ok(worst)
}

/// Largest relative gap between the explicit `g_n(θ)` and its quadrature form.
pub fn g_poly_dual_error(max_order: usize, thetas: &[f64], spec: &QuadratureSpec) -> Result<f64> {
    let mut worst = 0.0_f64;
    for n in 0..=max_order {
        let g = g_poly(n)?;
        for &theta in thetas {
            let (a, b) = (eval_poly(&g, theta), g_quadrature(n, theta, spec)?);
            worst = worst.max((a - b).abs() / 1.0_f64.max(a.abs()));
        }
    }
    Ok(worst)
}

/// θ values of the formula-equivalence grid.
pub const EQUIVALENCE_THETAS: [f64; 7] = [-5.0, -FRAC_PI_2, -0.5, 0.0, 1.0, FRAC_PI_2, 3.0];
pub const EQUIVALENCE_TIMES: [f64; 4] = [0.5, 1.0, 10.0, 1e4];
pub const EQUIVALENCE_RHOS: [f64; 3] = [0.5, 1.0, 2.0];

/// Largest `|f1 − f2|` over the equivalence grid.
pub fn formula_gap(spec: &QuadratureSpec) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &theta in &EQUIVALENCE_THETAS {
        for &t in &EQUIVALENCE_TIMES {
            for &rho in &EQUIVALENCE_RHOS {
                let q = DensityQuery::new(theta, t, rho)?;
                worst = worst.max((density_f1(&q, spec)? - density_f2(&q, spec)?).abs());
            }
        }
    }
    Ok(worst)
}

/// Largest `|∫f dθ − 1|` at `ρ = 1` over the given times.
pub fn normalization_gap(times: &[f64], spec: &QuadratureSpec) -> Result<f64> {
    let mut worst = 0.0_f64;
    for &t in times {
        worst = worst.max((total_mass(t, 1.0, spec)? - 1.0).abs());
    }
    Ok(worst)
}

/// `|C_n(t; 1) − c_n(1)|` for each `t`.
pub fn coefficient_gaps(n: usize, times: &[f64], spec: &QuadratureSpec) -> Result<Vec<f64>> {
    let c = c_coeff(n, 1.0)?;
    times
        .iter()
        .map(|&t| Ok((c_coeff_finite(n, t, 1.0, spec)? - c).abs()))
        .collect()
}

pub fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

pub fn algebra_suite(seed: u64) -> Result<Vec<Check>> {
    Ok(vec![
        Check::bounded(
            "rational expansion identity",
            gexp_identity_error(seed, RANDOM_DRAWS)?,
            1e-12,
        ),
        Check::bounded(
            "rational expansion recurrence",
            gexp_recurrence_error(seed, 1000)?,
            1e-12,
        ),
        Check::bounded(
            "fraction pair identity",
            fraction_pair_identity_error(seed, RANDOM_DRAWS)?,
            1e-12,
        ),
        Check::bounded(
            "first fraction coefficient bound",
            first_fraction_bound_ratio(seed, 1000)?,
            1.0 + 1e-12,
        ),
        Check::bounded(
            "A_n binomial vs cosine",
            a_theta_dual_error(seed, 1000, 12),
            1e-12,
        ),
        Check::bounded("|A_n| <= 1", a_theta_max_abs(seed, 1000), 1.0 + 1e-12),
        Check::bounded(
            "P_n binomial vs complex power",
            p_poly_dual_error(seed, 1000, 12),
            1e-12,
        ),
    ])
}

pub fn density_suite(spec: &QuadratureSpec) -> Result<Vec<Check>> {
    let mut even = 0.0_f64;
    for theta in [0.3, 1.0, FRAC_PI_2, 4.0] {
        for t in [1.0, 100.0] {
            let f = |th| density_f2(&DensityQuery::new(th, t, 1.0)?, spec);
            even = even.max((f(theta)? - f(-theta)?).abs());
        }
    }
    Ok(vec![
        Check::bounded("f1 equals f2 on 7x4x3 grid", formula_gap(spec)?, 1e-8),
        Check::bounded(
            "normalization",
            normalization_gap(&EQUIVALENCE_TIMES, spec)?,
            1e-6,
        ),
        Check::bounded("density is even in theta", even, 1e-12),
    ])
}

pub fn coefficients_suite(spec: &QuadratureSpec) -> Result<Vec<Check>> {
    let mut checks = vec![
        Check::bounded("c_0 = sqrt(pi)", (c_coeff(0, 1.0)? - SQRT_PI).abs(), 1e-10),
        Check::bounded(
            "c_1(1) = sqrt(pi)(log 2 - gamma)",
            (c_coeff(1, 1.0)? - SQRT_PI * (LN_2 - EULER_GAMMA)).abs(),
            1e-8,
        ),
        Check::bounded(
            "g_0 = 2 sqrt(pi)",
            (g_poly(0)?[0] - 2.0 * SQRT_PI).abs(),
            1e-10,
        ),
        Check::bounded(
            "c_n moments vs quadrature (n <= 8)",
            c_coeff_dual_error(8, 1.0, spec)?,
            1e-8,
        ),
        Check::bounded(
            "g_n explicit vs quadrature (n <= 8)",
            g_poly_dual_error(8, &[0.0, 1.0, 3.0], spec)?,
            1e-8,
        ),
    ];

    let early = [1e2, 1e3, 1e4, 1e5];
    let gaps0 = coefficient_gaps(0, &early, spec)?;
    checks.push(Check::holds(
        "|C_0(1e5) - sqrt(pi)| < |C_0(1e2) - sqrt(pi)|",
        gaps0[3] < gaps0[0],
        gaps0[3],
    ));
    checks.push(Check::bounded(
        "slope of |C_0 - sqrt(pi)| vs t, minus (-0.45)",
        log_log_slope(&early, &gaps0) + 0.45,
        0.0,
    ));
    for n in 1..=2 {
        let gaps = coefficient_gaps(n, &early, spec)?;
        checks.push(Check::holds(
            &format!("|C_{n} - c_{n}| decreasing over t = 1e2..1e5"),
            strictly_decreasing(&gaps),
            gaps[3],
        ));
    }
    // The gap for n >= 3 grows before it decays; check it past the turn.
    let late = [1e4, 1e5, 1e6, 1e8];
    for n in 3..=4 {
        let gaps = coefficient_gaps(n, &late, spec)?;
        checks.push(Check::holds(
            &format!("|C_{n} - c_{n}| decreasing over t = 1e4..1e8"),
            strictly_decreasing(&gaps),
            gaps[3],
        ));
    }
    Ok(checks)
}

pub fn run_suite(suite: Suite, seed: u64, spec: &QuadratureSpec) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Algebra | Suite::All) {
        checks.extend(algebra_suite(seed)?);
    }
    if matches!(suite, Suite::Density | Suite::All) {
        checks.extend(density_suite(spec)?);
    }
    if matches!(suite, Suite::Coefficients | Suite::All) {
        checks.extend(coefficients_suite(spec)?);
    }
    Ok(checks)
}

pub fn checks_table(checks: &[Check]) -> ResultTable {
    let mut table = ResultTable::new(&[
        ("check", ColumnType::Text),
        ("max_error", ColumnType::Real),
        ("threshold", ColumnType::Real),
        ("status", ColumnType::Text),
    ]);
    for c in checks {
        table.push(vec![
            c.name.as_str().into(),
            c.max_error.into(),
            c.threshold.into(),
            if c.pass { "PASS" } else { "FAIL" }.into(),
        ]);
    }
    table
}
