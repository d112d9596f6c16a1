//! Special functions and quadrature kernels shared by the rest of the crate.

mod bessel;
mod gamma;
pub mod quadrature;

pub use bessel::{bessel_i, bessel_i_scaled};
pub use gamma::{gamma_derivative_half, log_moment, MAX_GAMMA_DERIVATIVE};
pub use quadrature::{
    integrate_breakpoints, integrate_finite, integrate_finite_singular, integrate_semi_infinite,
    Estimate, IntegrandEnvelope, QuadratureSpec,
};

use crate::error::{Error, Result};

pub const SQRT_PI: f64 = 1.772_453_850_905_516;
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `arcosh(y) = log(y + √(y² − 1))` for `y ≥ 1`.
pub fn arcosh(y: f64) -> Result<f64> {
    if !(y >= 1.0) {
        return Err(Error::Domain("arcosh requires y >= 1"));
    }
    Ok(arcosh_1p(y - 1.0))
}

/// `arcosh(1 + eps)` without forming `1 + eps`, accurate for tiny `eps`.
pub fn arcosh_1p(eps: f64) -> f64 {
    if eps < 1e-5 {
        // √(2ε)(1 − ε/12 + 3ε²/160)
        libm::sqrt(2.0 * eps) * (1.0 - eps / 12.0 + 3.0 * eps * eps / 160.0)
    } else if eps > 1e150 {
        libm::log(2.0) + libm::log(eps)
    } else {
        libm::log1p(eps + libm::sqrt(eps * (2.0 + eps)))
    }
}

/// Compensated (Neumaier) summation for alternating binomial sums.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// `C(n, k)` as a float; exact for the small orders used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    libm::round(c)
}
