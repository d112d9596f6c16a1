//! Derivatives of `Γ` at `1/2` and the log-moments built from them:
//!
//! ```text
//! Γ^{(m)}(1/2) = ∫_0^∞ e^{-z} z^{-1/2} (log z)^m dz
//! ```

use alloc::boxed::Box;
use once_cell::race::OnceBox;

use super::quadrature::{integrate_semi_infinite, IntegrandEnvelope, QuadratureSpec};
use crate::error::{Error, Result};

/// Highest derivative order served by [`gamma_derivative_half`].
pub const MAX_GAMMA_DERIVATIVE: usize = 12;

static TABLE: OnceBox<[f64; MAX_GAMMA_DERIVATIVE + 1]> = OnceBox::new();

fn table_spec() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-13,
        abs_tol: 1e-15,
        max_subdivisions: 4000,
    }
}

fn compute_derivative(m: usize, spec: &QuadratureSpec) -> Result<f64> {
    let env = IntegrandEnvelope {
        decay_rate: 1.0,
        singular_exponent: -0.5,
    };
    let power = m as i32;
    integrate_semi_infinite(
        |z| libm::exp(-z) / libm::sqrt(z) * libm::pow(libm::log(z), power as f64),
        0.0,
        &env,
        spec,
    )
    .map_err(|e| e.in_integral("gamma derivative at 1/2"))
}

fn table() -> Result<&'static [f64; MAX_GAMMA_DERIVATIVE + 1]> {
    if let Some(t) = TABLE.get() {
        return Ok(t);
    }
    let spec = table_spec();
    let mut values = [0.0; MAX_GAMMA_DERIVATIVE + 1];
    for (m, v) in values.iter_mut().enumerate() {
        *v = compute_derivative(m, &spec)?;
    }
    // Racing initialisers compute identical tables; whichever lands first is kept.
    Ok(TABLE.get_or_init(|| Box::new(values)))
}

/// `Γ^{(m)}(1/2)` by direct quadrature, memoised for `m ≤ 12`.
pub fn gamma_derivative_half(m: usize) -> Result<f64> {
    if m > MAX_GAMMA_DERIVATIVE {
        return Err(Error::NonConvergence {
            integral: "gamma derivative at 1/2 (order above 12)",
            subdivisions: 0,
            abs_error: f64::INFINITY,
        });
    }
    Ok(table()?[m])
}

/// `∫_0^∞ e^{-z} z^{-1/2} (log(a z))^m dz`, expanded binomially over
/// `(log a)^j Γ^{(m-j)}(1/2)`.
pub fn log_moment(m: usize, a: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain("log_moment requires a > 0"));
    }
    let derivs = table()?;
    if m > MAX_GAMMA_DERIVATIVE {
        return gamma_derivative_half(m);
    }
    let log_a = libm::log(a);
    let mut binom = 1.0;
    let mut log_pow = 1.0;
    let mut acc = crate::numerics::NeumaierSum::default();
    for j in 0..=m {
        acc.add(binom * log_pow * derivs[m - j]);
        binom = binom * (m - j) as f64 / (j + 1) as f64;
        log_pow *= log_a;
    }
    Ok(acc.total())
}
