use core::fmt;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
    NonConvergence {
        integral: &'static str,
        subdivisions: usize,
        abs_error: f64,
    },
    /// `a >= b` (or a bound is NaN) where an ordered range is required.
    InvalidRange { lower: f64, upper: f64 },
    /// The integrand returned NaN or an infinity at an interior node.
    NonFiniteSample { at: f64 },
    /// The integrand is still too large at the truncation point of a semi-infinite range.
    EnvelopeViolated { at: f64, value: f64 },
    /// An argument is outside the domain of the function.
    Domain(&'static str),
    /// The rational expansion needs `c^2 - 4d < 0`.
    HypothesisViolated { discriminant: f64 },
    /// A fraction-pair denominator vanishes (`1 + bx = 0` and `θ = ±πx/2`).
    DegenerateDenominator,
    /// A simulated path needed more steps than the hard cap allows.
    StepBudgetExceeded { path_index: u64, steps: u64 },
    /// Histogram bin edges are not strictly increasing, or fewer than two were given.
    InvalidBins,
    /// A configuration value is outside its documented range.
    InvalidConfig(&'static str),
}

impl Error {
    /// Attach the name of the integral that failed to a `NonConvergence` error.
    pub fn in_integral(self, name: &'static str) -> Self {
        match self {
            Error::NonConvergence {
                subdivisions,
                abs_error,
                ..
            } => Error::NonConvergence {
                integral: name,
                subdivisions,
                abs_error,
            },
            other => other,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonConvergence {
                integral,
                subdivisions,
                abs_error,
            } => write!(
                f,
                "quadrature for {integral} did not converge after {subdivisions} subdivisions (error estimate {abs_error:e})"
            ),
            Error::InvalidRange { lower, upper } => {
                write!(f, "invalid range: lower bound {lower} is not below upper bound {upper}")
            }
            Error::NonFiniteSample { at } => write!(f, "integrand is not finite at {at}"),
            Error::EnvelopeViolated { at, value } => write!(
                f,
                "integrand exceeds its declared decay envelope at truncation point {at} (value {value:e})"
            ),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::HypothesisViolated { discriminant } => write!(
                f,
                "rational expansion requires c^2 - 4d < 0, got {discriminant}"
            ),
            Error::DegenerateDenominator => f.write_str("a fraction-pair denominator vanishes"),
            Error::StepBudgetExceeded { path_index, steps } => {
                write!(f, "path {path_index} exceeded the step budget after {steps} steps")
            }
            Error::InvalidBins => f.write_str("bin edges must be at least two strictly increasing values"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
