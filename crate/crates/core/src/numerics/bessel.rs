//! Modified Bessel function of the first kind, `I_ν(x)`, for real `ν ≥ 0`
//! and `x > 0`.
//!
//! The primary route is the integral representation
//!
//! ```text
//! I_ν(x) = (1/π) ∫_0^π e^{x cos ω} cos(νω) dω − (sin νπ / π) ∫_0^∞ e^{−x cosh ω − νω} dω
//! ```
//!
//! When `I_ν(x)` is tiny compared with `e^x` the two integrals cancel to
//! many digits; there the ascending series (all terms positive) is used.

use core::f64::consts::PI;

use super::quadrature::{integrate_finite, QuadratureSpec};
use crate::error::{Error, Result};

/// Below this ratio `I_ν(x) e^{-x}` the integral route has lost too many digits.
const CANCELLATION_RATIO: f64 = 1e-4;

/// `I_ν(x)`.
pub fn bessel_i(nu: f64, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    Ok(bessel_i_scaled(nu, x, spec)? * libm::exp(x))
}

/// `I_ν(x) e^{-x}`, finite for all admissible arguments.
pub fn bessel_i_scaled(nu: f64, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::Domain("bessel_i requires order nu >= 0"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain("bessel_i requires argument x > 0"));
    }
    let by_integral = integral_representation_scaled(nu, x, spec)?;
    if by_integral.abs() >= CANCELLATION_RATIO {
        Ok(by_integral)
    } else {
        Ok(series_scaled(nu, x))
    }
}

fn is_integer_order(nu: f64) -> bool {
    (nu - libm::round(nu)).abs() <= 1e-14
}

fn integral_representation_scaled(nu: f64, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    let oscillatory = integrate_finite(
        |w| libm::exp(x * (libm::cos(w) - 1.0)) * libm::cos(nu * w),
        0.0,
        PI,
        spec,
    )
    .map_err(|e| e.in_integral("bessel_i cosine integral"))?
        / PI;

    if is_integer_order(nu) {
        return Ok(oscillatory);
    }

    // e^{-x cosh ω - νω} after scaling by e^{-x}; cut where the exponent passes the tail cutoff.
    let cutoff = spec.tail_cutoff();
    let upper = super::arcosh(1.0 + cutoff / x).unwrap_or(1.0) + 1.0;
    let decaying = integrate_finite(
        |w| libm::exp(-x * (libm::cosh(w) + 1.0) - nu * w),
        0.0,
        upper,
        spec,
    )
    .map_err(|e| e.in_integral("bessel_i exponential integral"))?;

    Ok(oscillatory - libm::sin(nu * PI) / PI * decaying)
}

/// Ascending series `Σ_k (x/2)^{ν+2k} / (k! Γ(ν+k+1))`, scaled by `e^{-x}`.
pub(crate) fn series_scaled(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let log_first = nu * libm::log(half) - libm::lgamma(nu + 1.0) - x;
    let mut term = libm::exp(log_first);
    let mut sum = term;
    let q = half * half;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (nu + k));
        sum += term;
        if term <= f64::EPSILON * 1e-2 * sum || k > 500.0 {
            break;
        }
    }
    sum
}
