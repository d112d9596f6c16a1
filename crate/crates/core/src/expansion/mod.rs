//! Large-`t` expansions of the winding-angle density.
//!
//! With `x = 1/log √t`, the scaled density `log √t · f(θ log √t, t; ρ)` is
//! a series in `x` whose coefficients are `A_n(θ) C_n(t; ρ)`; the unscaled
//! density `log √t · f(θ, t)` at `ρ = 1` is a series whose coefficients are
//! the even polynomials `g_n(θ)`. Both rest on the finite expansion of a
//! rational function with an exact remainder, in [`rational`].

mod coefficients;
pub mod rational;

use alloc::vec::Vec;
use core::f64::consts::PI;

pub use coefficients::{
    a_shifted, a_theta, a_theta_trig, beta_angle, c_coeff, c_coeff_finite, c_coeff_quadrature,
    eval_poly, g_poly, g_quadrature, p_poly, p_poly_complex,
};
pub use rational::{
    fraction_pair, fraction_pair_expansion, fraction_pair_params, fraction_pair_term,
    gexp_coefficients, gexp_coefficients_complex, gexp_remainder, gexp_split, RationalParams,
};

use crate::error::{Error, Result};
use crate::numerics::{arcosh_1p, QuadratureSpec, SQRT_PI};

/// Highest expansion order served; the binomial sums lose too many digits
/// beyond it.
pub const MAX_ORDER: usize = 12;

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        return Err(Error::Domain("expansion order above 12"));
    }
    Ok(())
}

/// `x = 1/log √t` together with the `z`-dependent `b` and its `t → ∞` limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingContext {
    pub t: f64,
    pub x: f64,
    pub rho: f64,
}

impl ScalingContext {
    /// Requires `t > 2`, which keeps `x < 3`.
    pub fn new(t: f64, rho: f64) -> Result<Self> {
        if !(t > 2.0) || !t.is_finite() {
            return Err(Error::Domain("expansions require t > 2"));
        }
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::Domain("rho must be positive"));
        }
        Ok(ScalingContext {
            t,
            x: 1.0 / log_sqrt(t),
            rho,
        })
    }

    /// `ρ²/4t`.
    pub fn scale(&self) -> f64 {
        self.rho * self.rho / (4.0 * self.t)
    }

    /// `b(z) = ½ log(4z/ρ² + √((4z/ρ²)² − 1/t²))` for `z ≥ ρ²/4t`.
    pub fn b(&self, z: f64) -> Result<f64> {
        let s = self.scale();
        if !(z >= s) {
            return Err(Error::Domain("b(z) requires z >= rho^2/4t"));
        }
        Ok(self.b_shifted(z - s))
    }

    /// `b` at `z = ρ²/4t + w`, written as `½ arcosh(1 + w t 4/ρ²) − log √t`
    /// so that neither small `w` nor large `z` lose precision.
    pub fn b_shifted(&self, w: f64) -> f64 {
        0.5 * arcosh_1p(w / self.scale()) - 1.0 / self.x
    }

    /// `b₀(z) = ½ log(8z/ρ²)`.
    pub fn b0(&self, z: f64) -> f64 {
        0.5 * libm::log(8.0 * z / (self.rho * self.rho))
    }
}

/// `log √t`.
pub fn log_sqrt(t: f64) -> f64 {
    0.5 * libm::log(t)
}

/// Partial sum of the scaled expansion:
///
/// ```text
/// (1/2π√π) Σ_{n≤N} (−1)^n A_n(θ) C_n(t;ρ) / (2^{n−1} (1+θ²)^{(n+1)/2} (log √t)^n)
/// ```
///
/// which approximates `log √t · f(θ log √t, t; ρ)`.
pub fn theorem1_sum(
    theta: f64,
    t: f64,
    rho: f64,
    order: usize,
    spec: &QuadratureSpec,
) -> Result<f64> {
    check_order(order)?;
    let ctx = ScalingContext::new(t, rho)?;
    if !theta.is_finite() {
        return Err(Error::Domain("theta must be finite"));
    }
    let w = 1.0 + theta * theta;
    let mut sum = 0.0;
    for n in 0..=order {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * a_theta(n, theta) * c_coeff_finite(n, t, rho, spec)?
            / (libm::pow(2.0, n as f64 - 1.0) * libm::pow(w, 0.5 * (n + 1) as f64));
        sum += term * libm::pow(ctx.x, n as f64);
    }
    Ok(sum / (2.0 * PI * SQRT_PI))
}

/// Partial sum `(1/2π√π) Σ_{n≤N} g_n(θ) / (log √t)^n`, which approximates
/// `log √t · f(θ, t)` for a path started at distance 1.
pub fn theorem2_sum(theta: f64, t: f64, order: usize) -> Result<f64> {
    check_order(order)?;
    let ctx = ScalingContext::new(t, 1.0)?;
    if !theta.is_finite() {
        return Err(Error::Domain("theta must be finite"));
    }
    let mut sum = 0.0;
    for n in 0..=order {
        sum += eval_poly(&g_poly(n)?, theta) * libm::pow(ctx.x, n as f64);
    }
    Ok(sum / (2.0 * PI * SQRT_PI))
}

/// `G_n = (1/2π√π) ∫_α^β g_n(θ) dθ` for `n ≤ N`, by exact polynomial integration.
pub fn lll_coefficients(alpha: f64, beta: f64, order: usize) -> Result<Vec<f64>> {
    if !(alpha < beta) || !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::InvalidRange {
            lower: alpha,
            upper: beta,
        });
    }
    (0..=order)
        .map(|n| {
            let g = g_poly(n)?;
            let mut acc = 0.0;
            for (j, c) in g.iter().enumerate() {
                let p = (j + 1) as f64;
                acc += c * (libm::pow(beta, p) - libm::pow(alpha, p)) / p;
            }
            Ok(acc / (2.0 * PI * SQRT_PI))
        })
        .collect()
}

/// `Σ_{n≤N} G_n / (log √t)^n`, which approximates `log √t · P(α < Θ_t < β)`.
pub fn lll_correction(alpha: f64, beta: f64, t: f64, order: usize) -> Result<f64> {
    let ctx = ScalingContext::new(t, 1.0)?;
    let coeffs = lll_coefficients(alpha, beta, order)?;
    Ok(eval_poly(&coeffs, ctx.x))
}

/// All coefficient families of both expansions at one `(θ, t, ρ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoefficients {
    pub order: usize,
    pub theta: f64,
    pub t: f64,
    pub rho: f64,
    pub beta_angle: f64,
    /// `A_n(θ)`.
    pub a_theta: Vec<f64>,
    /// `c_n(ρ)`.
    pub c: Vec<f64>,
    /// `C_n(t; ρ)`.
    pub c_finite: Vec<f64>,
    /// Ascending coefficient arrays of `g_n`.
    pub g: Vec<Vec<f64>>,
}

impl ExpansionCoefficients {
    pub fn compute(
        theta: f64,
        t: f64,
        rho: f64,
        order: usize,
        spec: &QuadratureSpec,
    ) -> Result<Self> {
        check_order(order)?;
        ScalingContext::new(t, rho)?;
        let orders = 0..=order;
        Ok(ExpansionCoefficients {
            order,
            theta,
            t,
            rho,
            beta_angle: beta_angle(theta),
            a_theta: orders.clone().map(|n| a_theta(n, theta)).collect(),
            c: orders
                .clone()
                .map(|n| c_coeff(n, rho))
                .collect::<Result<_>>()?,
            c_finite: orders
                .clone()
                .map(|n| c_coeff_finite(n, t, rho, spec))
                .collect::<Result<_>>()?,
            g: orders.map(g_poly).collect::<Result<_>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::EULER_GAMMA;

    #[test]
    fn scaling_context_rejects_small_t() {
        assert!(ScalingContext::new(2.0, 1.0).is_err());
        assert!(ScalingContext::new(1.5, 1.0).is_err());
        let ctx = ScalingContext::new(2.0 + 1e-9, 1.0).unwrap();
        assert!(ctx.x < 3.0);
        assert!(theorem2_sum(0.0, 2.0, 1).is_err());
    }

    #[test]
    fn b_approaches_b0() {
        let ctx = ScalingContext::new(1e4, 1.3).unwrap();
        let s = ctx.scale();
        assert!((ctx.b(s).unwrap() + 1.0 / ctx.x).abs() < 1e-14);
        for z in [s * 1.5, 1e-3, 0.1, 1.0, 30.0] {
            let bound = ctx.rho * ctx.rho / (8.0 * z * ctx.t);
            assert!((ctx.b(z).unwrap() - ctx.b0(z)).abs() <= bound * (1.0 + 1e-9));
        }
        assert!(ctx.b(0.5 * s).is_err());
    }

    #[test]
    fn leading_terms() {
        assert!((theorem2_sum(0.0, 1e6, 0).unwrap() - 1.0 / PI).abs() < 1e-14);
        let g = lll_coefficients(0.0, PI, 0).unwrap();
        assert!((g[0] - 1.0).abs() < 1e-13);
        let g = lll_coefficients(0.0, 1.0, 1).unwrap();
        let expect = (EULER_GAMMA - core::f64::consts::LN_2) / (2.0 * PI);
        assert!((g[1] - expect).abs() < 1e-13);
        assert!(lll_coefficients(1.0, 1.0, 1).is_err());
        assert!(lll_coefficients(0.0, f64::INFINITY, 1).is_err());
    }

    #[test]
    fn scaled_sum_leading_term_is_cauchy_like() {
        let spec = QuadratureSpec::default();
        for theta in [0.0, 1.0, -4.0] {
            let v = theorem1_sum(theta, 1e8, 1.0, 0, &spec).unwrap();
            let c0 = c_coeff_finite(0, 1e8, 1.0, &spec).unwrap();
            let expect = c0 / (SQRT_PI * PI * (1.0 + theta * theta));
            assert!((v - expect).abs() < 1e-14);
            assert!((v - 1.0 / (PI * (1.0 + theta * theta))).abs() < 1e-3);
        }
    }
}
