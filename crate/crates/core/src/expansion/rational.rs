//! Finite expansions with exact remainders for
//! `g(x) = (1 + bx)/(1 + cx + dx²)` and for the pair of fractions
//! `(1+bx)/((1+bx)² + (θ ± πx/2)²)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::coefficients::{a_theta, p_poly};
use crate::error::{Error, Result};

/// Coefficients of `g(x) = (1 + bx)/(1 + cx + dx²)`, with `c² − 4d < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalParams {
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl RationalParams {
    pub fn new(b: f64, c: f64, d: f64) -> Result<Self> {
        let p = RationalParams { b, c, d };
        p.validate()?;
        Ok(p)
    }

    pub fn discriminant(&self) -> f64 {
        self.c * self.c - 4.0 * self.d
    }

    pub fn validate(&self) -> Result<()> {
        let disc = self.discriminant();
        if !(disc < 0.0) || !self.b.is_finite() {
            return Err(Error::HypothesisViolated { discriminant: disc });
        }
        Ok(())
    }

    /// Direct evaluation of `g(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        (1.0 + self.b * x) / (1.0 + self.c * x + self.d * x * x)
    }
}

/// Expansion coefficients `a_{-1}, a_0, …, a_N` of `g`, from
///
/// ```text
/// a_n = ((−1)^n / 2^n) Re[(1 + i(2b − c)/√(4d − c²)) (c + i√(4d − c²))^n]
/// ```
///
/// evaluated as `(−½)^n (Re wⁿ − (2b − c) Im wⁿ / √(4d − c²))`, `w = c + i√(4d − c²)`.
/// `Re wⁿ` and `Im wⁿ / √(4d − c²)` both obey `x_{n+1} = 2c x_n − 4d x_{n−1}`,
/// so nothing is divided by the square root, which is small near a double root.
///
/// Index `k` of the returned vector holds `a_{k−1}`.
pub fn gexp_coefficients(p: &RationalParams, order: usize) -> Result<Vec<f64>> {
    p.validate()?;
    let k = 2.0 * p.b - p.c;
    let mut out = Vec::with_capacity(order + 2);
    // n = −1: w⁻¹ = conj(w)/4d, so a_{−1} = −2 (c + (2b − c))/4d = −b/d.
    out.push(-p.b / p.d);
    let (mut re_prev, mut re) = (0.0, 1.0);
    let (mut im_prev, mut im) = (0.0, 0.0);
    let mut scale = 1.0;
    for n in 0..=order {
        out.push(scale * (re - k * im));
        let (re_next, im_next) = if n == 0 {
            (p.c, 1.0)
        } else {
            (
                2.0 * p.c * re - 4.0 * p.d * re_prev,
                2.0 * p.c * im - 4.0 * p.d * im_prev,
            )
        };
        re_prev = re;
        re = re_next;
        im_prev = im;
        im = im_next;
        scale *= -0.5;
    }
    Ok(out)
}

/// The same coefficients through complex powers, as printed in the closed form.
/// Loses accuracy as `c² − 4d → 0⁻`.
pub fn gexp_coefficients_complex(p: &RationalParams, order: usize) -> Result<Vec<f64>> {
    p.validate()?;
    let root = libm::sqrt(-p.discriminant());
    let lead = Complex64::new(1.0, (2.0 * p.b - p.c) / root);
    let base = Complex64::new(p.c, root);

    let mut out = Vec::with_capacity(order + 2);
    // n = −1: (−1)^{−1} 2^{1} = −2
    out.push(-2.0 * (lead / base).re);
    let mut power = Complex64::new(1.0, 0.0);
    let mut sign_scale = 1.0;
    for _ in 0..=order {
        out.push(sign_scale * (lead * power).re);
        power *= base;
        sign_scale *= -0.5;
    }
    Ok(out)
}

/// Exact remainder `q_N(x) = g(x) − Σ_{n≤N} a_n xⁿ`:
///
/// ```text
/// q_N(x) = −x^{N+1} (d a_{N−1} + c a_N + x d a_N) / (1 + cx + dx²)
/// ```
pub fn gexp_remainder(p: &RationalParams, x: f64, order: usize) -> Result<f64> {
    let a = gexp_coefficients(p, order)?;
    Ok(remainder_from(p, &a, x, order))
}

fn remainder_from(p: &RationalParams, a: &[f64], x: f64, order: usize) -> f64 {
    let a_prev = a[order];
    let a_last = a[order + 1];
    let denom = 1.0 + p.c * x + p.d * x * x;
    -libm::pow(x, (order + 1) as f64) * (p.d * a_prev + p.c * a_last + x * p.d * a_last) / denom
}

/// Partial sum `Σ_{n≤N} a_n xⁿ` and remainder `q_N(x)` in one pass.
pub fn gexp_split(p: &RationalParams, x: f64, order: usize) -> Result<(f64, f64)> {
    let a = gexp_coefficients(p, order)?;
    let mut sum = 0.0;
    let mut xn = 1.0;
    for an in &a[1..] {
        sum += an * xn;
        xn *= x;
    }
    Ok((sum, remainder_from(p, &a, x, order)))
}

/// `(1+bx)/((1+bx)² + (θ+πx/2)²) + (1+bx)/((1+bx)² + (θ−πx/2)²)`.
pub fn fraction_pair(theta: f64, x: f64, b: f64) -> Result<f64> {
    let num = 1.0 + b * x;
    let shift = 0.5 * PI * x;
    let d_plus = num * num + (theta + shift) * (theta + shift);
    let d_minus = num * num + (theta - shift) * (theta - shift);
    if d_plus == 0.0 || d_minus == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    Ok(num / d_plus + num / d_minus)
}

/// The two rational functions the fraction pair splits into: each fraction
/// equals `g(x)/(1 + θ²)` with `c = (2b ± πθ)/(1+θ²)`, `d = (b² + π²/4)/(1+θ²)`.
pub fn fraction_pair_params(theta: f64, b: f64) -> (RationalParams, RationalParams) {
    let w = 1.0 + theta * theta;
    let d = (b * b + 0.25 * PI * PI) / w;
    (
        RationalParams {
            b,
            c: (2.0 * b + PI * theta) / w,
            d,
        },
        RationalParams {
            b,
            c: (2.0 * b - PI * theta) / w,
            d,
        },
    )
}

/// One term of the fraction-pair expansion:
/// `(−1)ⁿ P_n(b) A_n(θ) / (2^{n−1} (1+θ²)^{(n+1)/2})`.
pub fn fraction_pair_term(n: usize, theta: f64, b: f64) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let w = 1.0 + theta * theta;
    sign * p_poly(n, b) * a_theta(n, theta)
        / (libm::pow(2.0, n as f64 - 1.0) * libm::pow(w, 0.5 * (n as f64 + 1.0)))
}

/// Partial sum `Σ_{n≤N} term_n xⁿ` and remainder `Q_N` of the fraction pair,
/// the remainder rebuilt from the two rational-expansion remainders.
pub fn fraction_pair_expansion(theta: f64, x: f64, b: f64, order: usize) -> Result<(f64, f64)> {
    let mut sum = 0.0;
    let mut xn = 1.0;
    for n in 0..=order {
        sum += fraction_pair_term(n, theta, b) * xn;
        xn *= x;
    }
    let (plus, minus) = fraction_pair_params(theta, b);
    let q = (gexp_remainder(&plus, x, order)? + gexp_remainder(&minus, x, order)?)
        / (1.0 + theta * theta);
    Ok((sum, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_one_plus_x_squared() {
        let p = RationalParams::new(0.0, 0.0, 1.0).unwrap();
        let a = gexp_coefficients(&p, 6).unwrap();
        let expect = [1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0];
        for (got, want) in a[1..].iter().zip(expect) {
            assert!((got - want).abs() < 1e-15);
        }
        // a_{-1} = −b/d
        assert!(a[0].abs() < 1e-15);
    }

    #[test]
    fn leading_coefficients_and_recurrence() {
        let p = RationalParams::new(0.7, -1.1, 2.3).unwrap();
        let a = gexp_coefficients(&p, 10).unwrap();
        assert!((a[1] - 1.0).abs() < 1e-14);
        assert!((a[2] - (p.b - p.c)).abs() < 1e-14);
        assert!((a[0] + p.b / p.d).abs() < 1e-14);
        for n in 0..=8 {
            let r = a[n + 3] + p.c * a[n + 2] + p.d * a[n + 1];
            assert!(r.abs() < 1e-12 * (1.0 + a[n + 1].abs()));
        }
    }

    #[test]
    fn remainder_vanishes_at_origin_and_closes_identity() {
        let p = RationalParams::new(1.5, 0.4, 0.9).unwrap();
        assert_eq!(gexp_remainder(&p, 0.0, 3).unwrap(), 0.0);
        let x = 0.8;
        // N = 0 uses a_{-1}
        let q0 = gexp_remainder(&p, x, 0).unwrap();
        assert!((q0 - (p.eval(x) - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn real_and_complex_forms_agree() {
        for (b, c, d) in [(0.7, -1.1, 2.3), (3.0, 0.5, 1.0), (-2.0, 4.0, 5.0)] {
            let p = RationalParams::new(b, c, d).unwrap();
            let x = gexp_coefficients(&p, 12).unwrap();
            let y = gexp_coefficients_complex(&p, 12).unwrap();
            for (u, v) in x.iter().zip(&y) {
                assert!((u - v).abs() <= 1e-12 * u.abs().max(1.0), "{u} vs {v}");
            }
        }
    }

    #[test]
    fn hypothesis_is_enforced() {
        assert!(matches!(
            RationalParams::new(0.0, 2.0, 1.0),
            Err(Error::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn fraction_pair_at_zero_x() {
        for theta in [0.0, 0.5, -3.0] {
            let v = fraction_pair(theta, 0.0, 2.0).unwrap();
            assert!((v - 2.0 / (1.0 + theta * theta)).abs() < 1e-15);
            let (sum, q) = fraction_pair_expansion(theta, 0.0, 2.0, 0).unwrap();
            assert!((sum - v).abs() < 1e-15 && q == 0.0);
        }
        assert!(matches!(
            fraction_pair(PI / 2.0, 1.0, -1.0),
            Err(Error::DegenerateDenominator)
        ));
    }
}
