//! Exact density and asymptotic expansions of the winding angle `Θ_t` of a
//! planar Brownian motion started at `(ρ, 0)`, with a Monte Carlo path
//! simulator as an independent check.
//!
//! * [`numerics`]: adaptive quadrature, `I_ν`, `Γ^{(m)}(1/2)` and log-moments.
//! * [`density`]: joint density of `(|Z_t|, Θ_t)`, the two integral formulas
//!   for the density of `Θ_t`, interval probabilities.
//! * [`expansion`]: rational and fraction-pair expansions with exact
//!   remainders, the coefficients of the large-`t` expansions and their
//!   partial sums.
//! * [`montecarlo`]: reproducible path simulation and histogram estimators.
//!
//! The crate is `no_std` (it needs `alloc`).

#![no_std]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod density;
pub mod error;
pub mod expansion;
pub mod montecarlo;
pub mod numerics;

pub use error::{Error, Result};
pub use numerics::QuadratureSpec;
