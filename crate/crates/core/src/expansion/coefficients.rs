//! Coefficient families of the two large-`t` expansions.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{check_order, ScalingContext};
use crate::density::sorted_points;
use crate::error::Result;
use crate::numerics::{
    binomial, integrate_breakpoints, integrate_semi_infinite, log_moment, IntegrandEnvelope,
    NeumaierSum, QuadratureSpec,
};

/// `A_n(θ) = Σ_{k even, k ≤ n+1} C(n+1, k) (−1)^{k/2} θ^k / (1+θ²)^{(n+1)/2}`.
pub fn a_theta(n: usize, theta: f64) -> f64 {
    let mut acc = NeumaierSum::default();
    let theta2 = theta * theta;
    let mut power = 1.0;
    let mut sign = 1.0;
    for k in (0..=n + 1).step_by(2) {
        acc.add(sign * binomial(n + 1, k) * power);
        power *= theta2;
        sign = -sign;
    }
    acc.total() / libm::pow(1.0 + theta2, 0.5 * (n + 1) as f64)
}

/// `A_n(θ) = cos((n+1) β)` with `β = atan θ`.
pub fn a_theta_trig(n: usize, theta: f64) -> f64 {
    libm::cos((n + 1) as f64 * beta_angle(theta))
}

/// The angle `β ∈ (−π/2, π/2)` with `e^{iβ} = (1+iθ)/(1+θ²)^{1/2}`.
pub fn beta_angle(theta: f64) -> f64 {
    libm::atan(theta)
}

/// `P_n(b) = Σ_{k even} C(n,k) (2b)^{n−k} (−1)^{k/2} π^k`.
pub fn p_poly(n: usize, b: f64) -> f64 {
    let mut acc = NeumaierSum::default();
    let mut sign = 1.0;
    for k in (0..=n).step_by(2) {
        acc.add(
            sign * binomial(n, k) * libm::pow(2.0 * b, (n - k) as f64) * libm::pow(PI, k as f64),
        );
        sign = -sign;
    }
    acc.total()
}

/// `P_n(b) = Re((2b + iπ)^n)`.
pub fn p_poly_complex(n: usize, b: f64) -> f64 {
    Complex64::new(2.0 * b, PI).powu(n as u32).re
}

/// `c_n(ρ) = Σ_{k even} C(n,k) (−1)^{k/2} π^k ∫_0^∞ e^{−z} z^{−1/2} (log(8z/ρ²))^{n−k} dz`.
pub fn c_coeff(n: usize, rho: f64) -> Result<f64> {
    check_order(n)?;
    let a = 8.0 / (rho * rho);
    let mut acc = NeumaierSum::default();
    let mut sign = 1.0;
    for k in (0..=n).step_by(2) {
        acc.add(sign * binomial(n, k) * libm::pow(PI, k as f64) * log_moment(n - k, a)?);
        sign = -sign;
    }
    Ok(acc.total())
}

/// `c_n(ρ) = ∫_0^∞ e^{−z} z^{−1/2} P_n(½ log(8z/ρ²)) dz` by quadrature.
pub fn c_coeff_quadrature(n: usize, rho: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_order(n)?;
    let a = 8.0 / (rho * rho);
    let env = IntegrandEnvelope::new(1.0, -0.5)?;
    integrate_semi_infinite(
        |z| libm::exp(-z) / libm::sqrt(z) * p_poly(n, 0.5 * libm::log(a * z)),
        0.0,
        &env,
        spec,
    )
    .map_err(|e| e.in_integral("c_n quadrature"))
}

/// `C_n(t; ρ) = ∫_{ρ²/4t}^∞ e^{−(z+ρ²/4t)} (z+ρ²/4t)^{−1/2} P_n(b) dz`,
/// integrated in `u` with `z = ρ²/4t + u²`.
pub fn c_coeff_finite(n: usize, t: f64, rho: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_order(n)?;
    let ctx = ScalingContext::new(t, rho)?;
    let s = ctx.scale();
    let upper = libm::sqrt(spec.tail_cutoff() + 10.0 + 3.0 * n as f64);
    let root = libm::sqrt(s);
    let pts = sorted_points(0.0, upper, &[root, 10.0 * root, 100.0 * root, 1.0]);
    integrate_breakpoints(
        |u| {
            let u2 = u * u;
            let weight = 2.0 * u * libm::exp(-(2.0 * s + u2)) / libm::sqrt(2.0 * s + u2);
            weight * p_poly(n, ctx.b_shifted(u2))
        },
        &pts,
        spec,
    )
    .map(|e| e.value)
    .map_err(|e| e.in_integral("C_n(t; rho) integral"))
}

/// Moments `∫_0^∞ e^{−z} z^{−1/2} (½ log 8z)^j dz` for `j ≤ n`.
fn half_log8_moments(n: usize) -> Result<Vec<f64>> {
    (0..=n)
        .map(|j| Ok(log_moment(j, 8.0)? * libm::pow(0.5, j as f64)))
        .collect()
}

/// Coefficients `[g_{n,0}, …, g_{n,n}]` of the polynomial
///
/// ```text
/// g_n(θ) = (−1)^n Σ_{k even} C(n,k) (−1)^{k/2} ((π/2+θ)^k + (π/2−θ)^k)
///          × ∫_0^∞ e^{−z} z^{−1/2} (½ log 8z)^{n−k} dz
/// ```
///
/// Odd coefficients are exactly zero.
pub fn g_poly(n: usize) -> Result<Vec<f64>> {
    check_order(n)?;
    let moments = half_log8_moments(n)?;
    let outer_sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut coeffs = vec![0.0; n + 1];
    for (j, coeff) in coeffs.iter_mut().enumerate().step_by(2) {
        let mut acc = NeumaierSum::default();
        let mut sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
        for k in (j..=n).step_by(2) {
            // (π/2+θ)^k + (π/2−θ)^k contributes 2 C(k,j) (π/2)^{k−j} θ^j for even j.
            let sym = 2.0 * binomial(k, j) * libm::pow(FRAC_PI_2, (k - j) as f64);
            acc.add(sign * binomial(n, k) * sym * moments[n - k]);
            sign = -sign;
        }
        *coeff = outer_sign * acc.total();
    }
    Ok(coeffs)
}

/// Horner evaluation of a coefficient array in ascending powers.
pub fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// `(−1)^n Re((b + i(π/2+θ))^n)`.
pub fn a_shifted(n: usize, b: f64, theta: f64) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * Complex64::new(b, FRAC_PI_2 + theta).powu(n as u32).re
}

/// `g_n(θ) = ∫_0^∞ e^{−z} z^{−1/2} (A_n(b₀, θ) + A_n(b₀, −θ)) dz`, `b₀ = ½ log 8z`,
/// by quadrature.
pub fn g_quadrature(n: usize, theta: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_order(n)?;
    let env = IntegrandEnvelope::new(1.0, -0.5)?;
    integrate_semi_infinite(
        |z| {
            let b0 = 0.5 * libm::log(8.0 * z);
            libm::exp(-z) / libm::sqrt(z) * (a_shifted(n, b0, theta) + a_shifted(n, b0, -theta))
        },
        0.0,
        &env,
        spec,
    )
    .map_err(|e| e.in_integral("g_n quadrature"))
}
