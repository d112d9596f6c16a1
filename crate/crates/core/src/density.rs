//! Exact densities for a Brownian motion started at `(ρ, 0)`.
//!
//! The winding-angle density is evaluated by two independent integral
//! formulas: one in the hyperbolic angle `ω`, and one in the variable
//! `z = (ρ²/4t) cosh ω` that the large-`t` expansions are built on. The
//! second is integrated after `z = ρ²/4t + u²`, which removes the
//! `(z − ρ²/4t)^{-1/2}` behaviour that appears at `θ = ±π/2`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::numerics::{arcosh_1p, bessel_i_scaled, integrate_breakpoints, QuadratureSpec};

/// Point `(θ, t, ρ)` at which the density of `Θ_t` is requested.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityQuery {
    pub theta: f64,
    pub t: f64,
    pub rho: f64,
}

impl DensityQuery {
    pub fn new(theta: f64, t: f64, rho: f64) -> Result<Self> {
        let q = DensityQuery { theta, t, rho };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.theta.is_finite() {
            return Err(Error::Domain("theta must be finite"));
        }
        if !(self.t > 0.0) || !self.t.is_finite() {
            return Err(Error::Domain("t must be positive"));
        }
        if !(self.rho > 0.0) || !self.rho.is_finite() {
            return Err(Error::Domain("rho must be positive"));
        }
        Ok(())
    }

    /// `ρ²/4t`, the only combination of `t` and `ρ` the density depends on.
    pub fn scale(&self) -> f64 {
        self.rho * self.rho / (4.0 * self.t)
    }
}

/// Point `(r, θ, t, ρ)` for the joint density of `(|Z_t|, Θ_t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointQuery {
    pub r: f64,
    pub angle: DensityQuery,
}

impl JointQuery {
    pub fn new(r: f64, theta: f64, t: f64, rho: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain("r must be positive"));
        }
        Ok(JointQuery {
            r,
            angle: DensityQuery::new(theta, t, rho)?,
        })
    }
}

/// Truncation order for the `ν`-integral of the joint density.
///
/// Starts from `max(20, 10a + 30/max(|θ|, 1))` and grows until the bound
/// `I_ν(a) e^{-a} ≤ (a/2)^ν e^{a²/4 − a} / Γ(ν+1)` is below `abs_tol`.
fn order_cutoff(a: f64, theta: f64, abs_tol: f64) -> f64 {
    let mut nu = libm::fmax(20.0, 10.0 * a + 30.0 / libm::fmax(theta.abs(), 1.0));
    let log_bound = |nu: f64| nu * libm::log(0.5 * a) + 0.25 * a * a - a - libm::lgamma(nu + 1.0);
    let target = libm::log(abs_tol) - 7.0;
    while log_bound(nu) > target {
        nu += 10.0;
    }
    nu
}

/// `p(r, θ, t; ρ) = (1/πt) e^{−(r²+ρ²)/2t} ∫_0^∞ cos(νθ) I_ν(ρr/t) dν`.
///
/// Tiny negative quadrature noise is clamped to zero.
pub fn joint_density(q: &JointQuery, spec: &QuadratureSpec) -> Result<f64> {
    let DensityQuery { theta, t, rho } = q.angle;
    q.angle.validate()?;
    let r = q.r;
    let a = rho * r / t;
    let nu_max = order_cutoff(a, theta, spec.abs_tol);

    let mut failure = None;
    let integral = integrate_breakpoints(
        |nu| match bessel_i_scaled(nu, a, spec) {
            Ok(v) => libm::cos(nu * theta) * v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        &[0.0, libm::fmin(1.0, nu_max / 2.0), nu_max],
        spec,
    )
    .map_err(|e| e.in_integral("joint density order integral"))?;
    if let Some(e) = failure {
        return Err(e);
    }
    let gauss = libm::exp(-(r - rho) * (r - rho) / (2.0 * t));
    Ok(libm::fmax(0.0, gauss * integral.value / (PI * t)))
}

/// `ρ e^{−(ρ²/4t)(1 − cos 2θ)} cos θ / √(2πt)` on `(−π/2, π/2)`, zero outside.
fn indicator_term(q: &DensityQuery) -> f64 {
    if q.theta.abs() < FRAC_PI_2 {
        let s = libm::sin(q.theta);
        // 1 − cos 2θ = 2 sin²θ
        q.rho * libm::exp(-q.scale() * 2.0 * s * s) * libm::cos(q.theta)
            / libm::sqrt(2.0 * PI * q.t)
    } else {
        0.0
    }
}

/// `weight · h/(h² + c²)`, with the `c = 0` case taken as `weight/h`.
#[inline]
fn lorentz(weight: f64, h: f64, c: f64) -> f64 {
    if c == 0.0 {
        weight / h
    } else {
        weight * h / (h * h + c * c)
    }
}

pub(crate) fn sorted_points(lower: f64, upper: f64, interior: &[f64]) -> Vec<f64> {
    let mut pts = Vec::with_capacity(interior.len() + 2);
    pts.push(lower);
    for &p in interior {
        if p > lower && p < upper && p.is_finite() {
            pts.push(p);
        }
    }
    pts.push(upper);
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * libm::fmax(a.abs(), 1.0));
    pts
}

/// Density of `Θ_t` from the hyperbolic-angle formula:
///
/// ```text
/// f = indicator term + ρ e^{−ρ²/4t} / (2π√(2πt)) ∫_0^∞ e^{−(ρ²/4t) cosh ω} sinh(ω/2)
///     × [ (ω/2)/((ω/2)² + (θ+π/2)²) + (ω/2)/((ω/2)² + (θ−π/2)²) ] dω
/// ```
pub fn density_f1(q: &DensityQuery, spec: &QuadratureSpec) -> Result<f64> {
    q.validate()?;
    let s = q.scale();
    let (c_plus, c_minus) = (q.theta + FRAC_PI_2, q.theta - FRAC_PI_2);

    // Past W the integrand is below e^{-cutoff}: s cosh W − W/2 ≥ cutoff.
    let cutoff = spec.tail_cutoff();
    let mut upper = arcosh_1p(cutoff / s);
    for _ in 0..4 {
        upper = arcosh_1p((cutoff + 0.5 * upper) / s);
    }
    upper += 1.0;

    let integrand = |w: f64| {
        let h = 0.5 * w;
        // sinh(h)/h → 1 as w → 0
        let sinh_h = libm::sinh(h);
        let weight = libm::exp(-s * (1.0 + libm::cosh(w)));
        if h == 0.0 {
            let limit = |c: f64| if c == 0.0 { 1.0 } else { 0.0 };
            return weight * (limit(c_plus) + limit(c_minus));
        }
        weight * (lorentz(sinh_h, h, c_plus) + lorentz(sinh_h, h, c_minus))
    };

    let peak = libm::log(2.0 / s);
    let pts = sorted_points(
        0.0,
        upper,
        &[
            2.0 * c_plus.abs(),
            2.0 * c_minus.abs(),
            1.0,
            peak,
            peak + 2.0,
        ],
    );
    let integral = integrate_breakpoints(integrand, &pts, spec)
        .map_err(|e| e.in_integral("density_f1 omega integral"))?;

    let prefactor = q.rho / (2.0 * PI * libm::sqrt(2.0 * PI * q.t));
    Ok(indicator_term(q) + prefactor * integral.value)
}

/// Density of `Θ_t` from the `z`-formula:
///
/// ```text
/// f = indicator term + 1/(2π√π) ∫_{ρ²/4t}^∞ e^{−(z+ρ²/4t)} / √(z+ρ²/4t)
///     × [ a/(a² + (θ+π/2)²) + a/(a² + (θ−π/2)²) ] dz,   a = ½ arcosh(4tz/ρ²)
/// ```
///
/// integrated in `u` with `z = ρ²/4t + u²`.
pub fn density_f2(q: &DensityQuery, spec: &QuadratureSpec) -> Result<f64> {
    q.validate()?;
    let s = q.scale();
    let (c_plus, c_minus) = (q.theta + FRAC_PI_2, q.theta - FRAC_PI_2);
    let upper = libm::sqrt(spec.tail_cutoff() + 10.0);

    let integrand = |u: f64| {
        let u2 = u * u;
        let a = 0.5 * arcosh_1p(u2 / s);
        let weight = 2.0 * u * libm::exp(-(2.0 * s + u2)) / libm::sqrt(2.0 * s + u2);
        if a == 0.0 {
            return 0.0;
        }
        lorentz(weight, a, c_plus) + lorentz(weight, a, c_minus)
    };

    // a = |c| at u = √(2s) sinh|c|; the arcosh switches from √ to log near u ~ √s.
    let root = libm::sqrt(s);
    let sqrt2s = libm::sqrt(2.0 * s);
    let pts = sorted_points(
        0.0,
        upper,
        &[
            root,
            10.0 * root,
            sqrt2s * libm::sinh(c_plus.abs()),
            sqrt2s * libm::sinh(c_minus.abs()),
            1.0,
        ],
    );
    let integral = integrate_breakpoints(integrand, &pts, spec)
        .map_err(|e| e.in_integral("density_f2 z integral"))?;

    Ok(indicator_term(q) + integral.value / (2.0 * PI * crate::numerics::SQRT_PI))
}

/// `P(α < Θ_t < β)` for a path started at `(ρ, 0)`; either bound may be infinite.
///
/// Integrated in `φ` with `θ = L tan φ`, `L = max(1, log √t)`: the density's
/// `θ^{-2}` tail becomes a bounded integrand on a finite range, so infinite
/// bounds need no truncation.
pub fn interval_probability(
    alpha: f64,
    beta: f64,
    t: f64,
    rho: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    Ok(angle_integral(alpha, beta, t, rho, spec)?.clamp(0.0, 1.0))
}

/// `∫_ℝ f(θ, t; ρ) dθ` without clamping; equals 1 up to quadrature error.
pub fn total_mass(t: f64, rho: f64, spec: &QuadratureSpec) -> Result<f64> {
    angle_integral(f64::NEG_INFINITY, f64::INFINITY, t, rho, spec)
}

fn angle_integral(alpha: f64, beta: f64, t: f64, rho: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(alpha < beta) {
        return Err(Error::InvalidRange {
            lower: alpha,
            upper: beta,
        });
    }
    DensityQuery::new(0.0, t, rho)?;
    let scale = libm::fmax(1.0, 0.5 * libm::log(t));
    let phi_lo = libm::atan(alpha / scale);
    let phi_hi = libm::atan(beta / scale);
    let kink = libm::atan(FRAC_PI_2 / scale);
    let pts = sorted_points(phi_lo, phi_hi, &[-kink, 0.0, kink]);

    let outer = QuadratureSpec {
        rel_tol: spec.rel_tol * 10.0,
        abs_tol: spec.abs_tol * 10.0,
        ..*spec
    };
    let mut failure = None;
    let integral = integrate_breakpoints(
        |phi| {
            let c = libm::cos(phi);
            let theta = scale * libm::tan(phi);
            let q = DensityQuery { theta, t, rho };
            match density_f2(&q, spec) {
                Ok(f) => f * scale / (c * c),
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        &pts,
        &outer,
    )
    .map_err(|e| e.in_integral("interval probability angle integral"))?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(integral.value)
}

/// `∫_0^∞ p(r, θ, t; ρ) r dr` by direct double quadrature of the joint
/// density. Slow; meant as an oracle for the closed formulas.
pub fn marginal_consistency(q: &DensityQuery, spec: &QuadratureSpec) -> Result<f64> {
    q.validate()?;
    let upper = q.rho + libm::sqrt(2.0 * q.t * (spec.tail_cutoff() + 10.0));
    let mut failure = None;
    let integral = integrate_breakpoints(
        |r| {
            if r == 0.0 {
                return 0.0;
            }
            let jq = JointQuery { r, angle: *q };
            match joint_density(&jq, spec) {
                Ok(p) => p * r,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        &sorted_points(0.0, upper, &[q.rho]),
        &QuadratureSpec {
            rel_tol: spec.rel_tol * 10.0,
            abs_tol: spec.abs_tol * 10.0,
            ..*spec
        },
    )
    .map_err(|e| e.in_integral("joint density radial integral"))?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(integral.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn q(theta: f64, t: f64, rho: f64) -> DensityQuery {
        DensityQuery::new(theta, t, rho).unwrap()
    }

    #[test]
    fn rejects_invalid_queries() {
        assert!(DensityQuery::new(0.0, 0.0, 1.0).is_err());
        assert!(DensityQuery::new(0.0, 1.0, -1.0).is_err());
        assert!(DensityQuery::new(f64::NAN, 1.0, 1.0).is_err());
        assert!(JointQuery::new(0.0, 0.0, 1.0, 1.0).is_err());
        assert!(matches!(
            interval_probability(1.0, 1.0, 1.0, 1.0, &spec()),
            Err(Error::InvalidRange { .. })
        ));
    }

    #[test]
    fn f1_and_f2_are_even() {
        for &(theta, t, rho) in &[(0.3, 1.0, 1.0), (2.2, 10.0, 0.5), (7.5, 0.5, 2.0)] {
            let a = density_f1(&q(theta, t, rho), &spec()).unwrap();
            let b = density_f1(&q(-theta, t, rho), &spec()).unwrap();
            assert!((a - b).abs() <= 1e-12 * a);
            let a = density_f2(&q(theta, t, rho), &spec()).unwrap();
            let b = density_f2(&q(-theta, t, rho), &spec()).unwrap();
            assert!((a - b).abs() <= 1e-12 * a);
        }
    }

    #[test]
    fn f1_matches_f2_at_quarter_turns() {
        for theta in [FRAC_PI_2, -FRAC_PI_2, FRAC_PI_2 + 1e-9, 0.0] {
            for (t, rho) in [(1.0, 1.0), (1e4, 0.5)] {
                let a = density_f1(&q(theta, t, rho), &spec()).unwrap();
                let b = density_f2(&q(theta, t, rho), &spec()).unwrap();
                assert!((a - b).abs() < 1e-10, "theta={theta} t={t}: {a} vs {b}");
                assert!(a > 0.0);
            }
        }
    }

    #[test]
    fn scaling_in_rho_over_sqrt_t() {
        for (theta, t, rho, c) in [(0.7, 3.0, 1.0, 0.6), (4.0, 50.0, 0.8, 1.9)] {
            let a = density_f2(&q(theta, t, rho), &spec()).unwrap();
            let b = density_f2(&q(theta, c * c * t, c * rho), &spec()).unwrap();
            assert!((a - b).abs() < 1e-10 * a.max(1.0));
        }
    }

    #[test]
    fn interval_symmetry() {
        let s = spec();
        let full = interval_probability(-1.3, 1.3, 10.0, 1.0, &s).unwrap();
        let half = interval_probability(0.0, 1.3, 10.0, 1.0, &s).unwrap();
        assert!((full - 2.0 * half).abs() < 1e-9);
        let right = interval_probability(0.0, f64::INFINITY, 10.0, 1.0, &s).unwrap();
        assert!((right - 0.5).abs() < 1e-8);
    }

    #[test]
    fn joint_density_is_even_in_theta() {
        let a = joint_density(&JointQuery::new(0.8, 0.6, 1.0, 1.0).unwrap(), &spec()).unwrap();
        let b = joint_density(&JointQuery::new(0.8, -0.6, 1.0, 1.0).unwrap(), &spec()).unwrap();
        assert!((a - b).abs() <= 1e-14 * a.max(1e-300));
        assert!(a > 0.0);
    }
}
