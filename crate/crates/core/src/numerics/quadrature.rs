//! Globally adaptive Gauss-Kronrod (7/15) integration over finite ranges,
//! plus the two transformations every integral in this crate relies on:
//! power substitution at an integrable endpoint singularity and envelope-based
//! truncation of semi-infinite ranges.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances and limits shared by every integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-13,
            max_subdivisions: 4000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = QuadratureSpec {
            rel_tol,
            abs_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidConfig("rel_tol must be positive"));
        }
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidConfig("abs_tol must be positive"));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidConfig("max_subdivisions must be at least 1"));
        }
        Ok(())
    }

    /// Same limits with a different relative tolerance.
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    /// Exponent at which an `e^{-z}`-type envelope is cut off:
    /// `max(40, -ln(abs_tol) + 10)`.
    ///
    /// `e^{-40}` is about `4e-18`, well below any double-precision target,
    /// and the tail `∫_Z^∞ e^{-z} z^{-1/2} dz ≤ e^{-Z}/√Z` sits under
    /// `abs_tol` for every admissible tolerance.
    pub fn tail_cutoff(&self) -> f64 {
        let from_tol = -libm::log(self.abs_tol) + 10.0;
        if from_tol > 40.0 {
            from_tol
        } else {
            40.0
        }
    }
}

/// Dominating behaviour of an integrand on `[a, ∞)`:
/// `|f(z)| ≲ (z - a)^singular_exponent · e^{-decay_rate (z - a)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrandEnvelope {
    pub decay_rate: f64,
    pub singular_exponent: f64,
}

impl IntegrandEnvelope {
    pub fn new(decay_rate: f64, singular_exponent: f64) -> Result<Self> {
        let env = IntegrandEnvelope {
            decay_rate,
            singular_exponent,
        };
        env.validate()?;
        Ok(env)
    }

    /// Plain exponential decay with no endpoint singularity.
    pub fn exponential(decay_rate: f64) -> Self {
        IntegrandEnvelope {
            decay_rate,
            singular_exponent: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.decay_rate > 0.0 && self.decay_rate.is_finite()) {
            return Err(Error::InvalidConfig("decay_rate must be positive"));
        }
        if !(self.singular_exponent > -1.0 && self.singular_exponent <= 0.0) {
            return Err(Error::InvalidConfig(
                "singular_exponent must lie in (-1, 0]",
            ));
        }
        Ok(())
    }
}

/// Value and error estimate of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
    pub subdivisions: usize,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    roundoff: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod_15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteSample { at: x })
        }
    };

    let fc = eval(center)?;
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = fc.abs() * WGK[7];
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        let scale = libm::pow(200.0 * error / resasc, 1.5);
        error = if scale < 1.0 { resasc * scale } else { resasc };
    }
    let roundoff = 50.0 * f64::EPSILON * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && roundoff > error {
        error = roundoff;
    }
    Ok(Segment {
        a,
        b,
        value,
        error,
        roundoff,
    })
}

/// Adaptive integration over consecutive pieces `points[0]..points[1]..…`.
///
/// Breakpoints mark places where the integrand has kinks or changes scale;
/// the error budget is global across all pieces.
pub fn integrate_breakpoints<F: FnMut(f64) -> f64>(
    mut f: F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    if points.len() < 2 {
        return Err(Error::InvalidRange {
            lower: f64::NAN,
            upper: f64::NAN,
        });
    }
    for w in points.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::InvalidRange {
                lower: w[0],
                upper: w[1],
            });
        }
    }

    let mut heap = BinaryHeap::with_capacity(points.len() + 16);
    for w in points.windows(2) {
        heap.push(kronrod_15(&mut f, w[0], w[1])?);
    }
    // Segments whose estimate cannot be improved by bisection.
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;
    let mut subdivisions = heap.len();
    let mut value: f64 = heap.iter().map(|s| s.value).sum();
    let mut error: f64 = heap.iter().map(|s| s.error).sum();

    loop {
        let tol = libm::fmax(spec.abs_tol, spec.rel_tol * value.abs());
        if error <= tol || heap.is_empty() {
            // Running sums drift; recompute before deciding.
            value = frozen_value + heap.iter().map(|s| s.value).sum::<f64>();
            error = heap.iter().map(|s| s.error).sum::<f64>();
            let tol = libm::fmax(spec.abs_tol, spec.rel_tol * value.abs());
            if error <= tol || heap.is_empty() {
                return Ok(Estimate {
                    value,
                    abs_error: error + frozen_error,
                    subdivisions,
                });
            }
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::NonConvergence {
                integral: "adaptive integral",
                subdivisions,
                abs_error: error,
            });
        }

        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        let unsplittable = !(worst.a < mid && mid < worst.b)
            || (worst.b - worst.a) <= 1e3 * f64::EPSILON * libm::fmax(worst.a.abs(), worst.b.abs());
        if unsplittable || worst.error <= worst.roundoff {
            // Roundoff-limited: keep its value, stop counting its error
            // against the tolerance.
            frozen_value += worst.value;
            frozen_error += worst.error;
            error -= worst.error;
            continue;
        }
        let left = kronrod_15(&mut f, worst.a, mid)?;
        let right = kronrod_15(&mut f, mid, worst.b)?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
    }
}

/// `∫_a^b f(z) dz`.
pub fn integrate_finite<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(a < b) {
        return Err(Error::InvalidRange { lower: a, upper: b });
    }
    integrate_breakpoints(f, &[a, b], spec).map(|e| e.value)
}

/// `∫_a^b f(z) dz` for `f(z) ~ (z - a)^s` near `a`, with `s ∈ (-1, 0]`.
///
/// The substitution `z = a + u^m`, `m = 1/(1+s)`, turns the integrand into
/// `f(a + u^m) m u^{m-1}`, which is bounded at `u = 0`. For `s = -1/2` this
/// is `z = a + u²`.
pub fn integrate_finite_singular<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    singular_exponent: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(a < b) {
        return Err(Error::InvalidRange { lower: a, upper: b });
    }
    if !(singular_exponent > -1.0 && singular_exponent <= 0.0) {
        return Err(Error::InvalidConfig(
            "singular_exponent must lie in (-1, 0]",
        ));
    }
    if singular_exponent == 0.0 {
        return integrate_finite(f, a, b, spec);
    }
    let m = 1.0 / (1.0 + singular_exponent);
    let upper = libm::pow(b - a, 1.0 / m);
    integrate_finite(
        |u| f(a + libm::pow(u, m)) * m * libm::pow(u, m - 1.0),
        0.0,
        upper,
        spec,
    )
}

/// `∫_a^∞ f(z) dz` for an integrand dominated by `env`.
///
/// The range is cut at `Z = a + tail_cutoff / decay_rate`; the integrand at
/// `Z` is checked against the tolerance so that a wrongly declared envelope
/// is reported instead of silently truncated.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    env: &IntegrandEnvelope,
    spec: &QuadratureSpec,
) -> Result<f64> {
    env.validate()?;
    if !a.is_finite() {
        return Err(Error::InvalidRange {
            lower: a,
            upper: f64::INFINITY,
        });
    }
    let z_max = a + spec.tail_cutoff() / env.decay_rate;
    let value = integrate_finite_singular(&mut f, a, z_max, env.singular_exponent, spec)?;

    const ENVELOPE_FACTOR: f64 = 1e3;
    let at_cut = f(z_max);
    let tail = at_cut.abs() / env.decay_rate;
    let tol = libm::fmax(spec.abs_tol, spec.rel_tol * value.abs());
    if !at_cut.is_finite() || tail > ENVELOPE_FACTOR * tol {
        return Err(Error::EnvelopeViolated {
            at: z_max,
            value: at_cut,
        });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn constant_integrand() {
        let v = integrate_finite(|_| 1.0, 0.0, 1.0, &spec()).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exp_cos_gives_pi_i0() {
        // π·I_0(1), I_0(1) from its power series.
        let mut i0 = 0.0;
        let mut term = 1.0;
        for k in 0..20 {
            if k > 0 {
                term *= 0.25 / ((k * k) as f64);
            }
            i0 += term;
        }
        let v = integrate_finite(
            |w| libm::exp(libm::cos(w)),
            0.0,
            core::f64::consts::PI,
            &spec(),
        )
        .unwrap();
        assert!((v - core::f64::consts::PI * i0).abs() < 1e-12);
        assert!((v - 3.977_463_260_506_422_6).abs() < 1e-12);
    }

    #[test]
    fn inverse_sqrt_singularity() {
        let v =
            integrate_finite_singular(|z| 1.0 / libm::sqrt(z), 0.0, 1.0, -0.5, &spec()).unwrap();
        assert!((v - 2.0).abs() < 1e-13);
        let v =
            integrate_finite_singular(|z| libm::pow(z, -0.75), 0.0, 1.0, -0.75, &spec()).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn semi_infinite_examples() {
        let s = spec();
        let v = integrate_semi_infinite(
            |z| libm::exp(-z),
            0.0,
            &IntegrandEnvelope::exponential(1.0),
            &s,
        )
        .unwrap();
        assert!((v - 1.0).abs() < 1e-13);

        let env = IntegrandEnvelope::new(1.0, -0.5).unwrap();
        let v = integrate_semi_infinite(|z| libm::exp(-z) / libm::sqrt(z), 0.0, &env, &s).unwrap();
        assert!((v - 1.772_453_850_905_516).abs() < 1e-12);

        let v = integrate_semi_infinite(
            |z| libm::exp(-z) / libm::sqrt(z) * libm::log(z),
            0.0,
            &env,
            &s,
        )
        .unwrap();
        assert!((v + 3.480_230_906_913_262).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_ranges_and_samples() {
        let s = spec();
        assert!(matches!(
            integrate_finite(|x| x, 1.0, 1.0, &s),
            Err(Error::InvalidRange { .. })
        ));
        assert!(matches!(
            integrate_finite(|x| 1.0 / (x - 0.5), 0.0, 1.0, &s),
            Err(Error::NonFiniteSample { .. })
        ));
        let tight = QuadratureSpec {
            max_subdivisions: 3,
            ..s
        };
        assert!(matches!(
            integrate_finite(|x| libm::sin(200.0 * x), 0.0, 10.0, &tight),
            Err(Error::NonConvergence { .. })
        ));
        assert!(QuadratureSpec::new(0.0, 1e-10, 10).is_err());
        assert!(IntegrandEnvelope::new(1.0, -1.0).is_err());
    }

    #[test]
    fn wrong_envelope_is_reported() {
        let r = integrate_semi_infinite(
            |z| libm::exp(-z / 100.0),
            0.0,
            &IntegrandEnvelope::exponential(1.0),
            &spec(),
        );
        assert!(matches!(r, Err(Error::EnvelopeViolated { .. })));
    }

    #[test]
    fn repeated_calls_are_bit_identical() {
        let f = |z: f64| libm::exp(-z) * libm::cos(3.0 * z) / libm::sqrt(z);
        let env = IntegrandEnvelope::new(1.0, -0.5).unwrap();
        let a = integrate_semi_infinite(f, 0.0, &env, &spec()).unwrap();
        let b = integrate_semi_infinite(f, 0.0, &env, &spec()).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
