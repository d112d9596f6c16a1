//! Path simulation of the winding angle and histogram estimators.
//!
//! Paths are advanced in the clock `H = ∫ ds/R²`, in which `log R` and the
//! winding angle are independent Brownian motions. Clock steps are
//! `h_max/R²` far from the origin (real-time steps of about `h_max`) and grow
//! like `κ log²(√(h_max/κ)/R)` close to it, so excursions towards the origin,
//! where the angle winds fastest, cost a number of steps logarithmic in their
//! depth.
//!
//! Path `i` draws from its own ChaCha8 stream (`set_stream(i)` on a generator
//! seeded from the master seed), so a batch gives the same samples whatever
//! order or thread the paths run on.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Hard cap on the number of steps of a single path.
pub const MAX_STEPS: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub t: f64,
    pub rho: f64,
    pub n_paths: u64,
    pub h_max: f64,
    pub kappa: f64,
    pub master_seed: u64,
}

impl SimConfig {
    /// Config with the default step control `h_max = t/1000`, `κ = 0.01`.
    pub fn new(t: f64, rho: f64, n_paths: u64, master_seed: u64) -> Result<Self> {
        let cfg = SimConfig {
            t,
            rho,
            n_paths,
            h_max: t / 1000.0,
            kappa: 0.01,
            master_seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t > 0.0) || !self.t.is_finite() {
            return Err(Error::InvalidConfig("t must be positive and finite"));
        }
        if !(self.rho > 0.0) || !self.rho.is_finite() {
            return Err(Error::InvalidConfig("rho must be positive and finite"));
        }
        if self.n_paths == 0 {
            return Err(Error::InvalidConfig("n_paths must be at least 1"));
        }
        if !(self.h_max > 0.0 && self.h_max <= self.t) {
            return Err(Error::InvalidConfig("h_max must lie in (0, t]"));
        }
        if !(self.kappa > 0.0 && self.kappa <= 1.0) {
            return Err(Error::InvalidConfig("kappa must lie in (0, 1]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingSample {
    pub theta_t: f64,
    pub n_steps: u64,
    pub min_radius: f64,
}

/// The generator for one path.
pub fn path_rng(master_seed: u64, path_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(path_index);
    rng
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Clock step `dH` at radius `e^β`: `h_max/R²` away from the origin, `κ` at
/// `R = √(h_max/κ)`, growing like `κ log²(r_ref/R)` below it.
fn clock_step(cfg: &SimConfig, beta: f64, log_ref: f64) -> f64 {
    if beta >= log_ref {
        cfg.h_max * libm::exp(-2.0 * beta)
    } else {
        let depth = libm::fmax(1.0, log_ref - beta);
        cfg.kappa * depth * depth
    }
}

/// Real time spent over a clock step `dh` that starts at `β` and moves `β` by `delta`:
/// `e^{2β} dh (e^{2Δ} − 1)/(2Δ) (1 + dh/3)`, the bridge mean of `∫ e^{2β_u} du` to
/// first order in `dh`.
fn real_time(beta: f64, delta: f64, dh: f64) -> f64 {
    let avg = if delta.abs() < 1e-8 {
        1.0 + delta
    } else {
        libm::expm1(2.0 * delta) / (2.0 * delta)
    };
    libm::exp(2.0 * beta) * dh * avg * (1.0 + dh / 3.0)
}

/// Simulates path `path_index` of `cfg` up to time `t`.
///
/// Works in the skew-product coordinates `Z = exp(β_H + iγ_H)`: in the clock
/// `H = ∫ ds/R²` both `β = log R` and the winding angle `γ` are independent
/// standard Brownian motions, so their increments are exact for any clock
/// step and only the real time `∫ e^{2β} dH` is approximated.
pub fn simulate_winding(cfg: &SimConfig, path_index: u64) -> Result<WindingSample> {
    cfg.validate()?;
    if path_index >= cfg.n_paths {
        return Err(Error::InvalidConfig("path_index must be below n_paths"));
    }
    let mut rng = path_rng(cfg.master_seed, path_index);
    let log_ref = 0.5 * libm::log(cfg.h_max / cfg.kappa);
    let mut beta = libm::log(cfg.rho);
    let mut min_beta = beta;
    let mut theta = 0.0;
    let mut time = 0.0;
    let mut steps = 0_u64;

    while time < cfg.t {
        if steps >= MAX_STEPS {
            return Err(Error::StepBudgetExceeded { path_index, steps });
        }
        let mut dh = clock_step(cfg, beta, log_ref);
        let remaining = cfg.t - time;
        let last = libm::exp(2.0 * beta) * dh * (1.0 + dh / 3.0) >= remaining;
        if last {
            dh = remaining * libm::exp(-2.0 * beta);
        }
        let sd = libm::sqrt(dh);
        let d_beta = sd * normal(&mut rng);
        let d_theta = sd * normal(&mut rng);
        time = if last {
            cfg.t
        } else {
            time + real_time(beta, d_beta, dh)
        };
        beta += d_beta;
        theta += d_theta;
        min_beta = libm::fmin(min_beta, beta);
        steps += 1;
    }
    if !theta.is_finite() || !beta.is_finite() {
        return Err(Error::NonFiniteSample {
            at: path_index as f64,
        });
    }
    Ok(WindingSample {
        theta_t: theta,
        n_steps: steps,
        min_radius: libm::exp(min_beta),
    })
}

/// All `n_paths` samples, in path order.
pub fn sample_batch(cfg: &SimConfig) -> Result<Vec<WindingSample>> {
    cfg.validate()?;
    (0..cfg.n_paths).map(|i| simulate_winding(cfg, i)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistogramEstimate {
    pub bin_edges: Vec<f64>,
    pub densities: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub n_samples: u64,
}

impl HistogramEstimate {
    pub fn bin_count(&self) -> usize {
        self.densities.len()
    }

    pub fn width(&self, bin: usize) -> f64 {
        self.bin_edges[bin + 1] - self.bin_edges[bin]
    }
}

fn check_edges(edges: &[f64]) -> Result<()> {
    if edges.len() < 2
        || edges.iter().any(|e| !e.is_finite())
        || edges.windows(2).any(|w| !(w[0] < w[1]))
    {
        return Err(Error::InvalidBins);
    }
    Ok(())
}

/// Histogram density estimate: bins are `[e_i, e_{i+1})`, the last one closed.
/// Samples outside the edges count towards `n` but no bin.
pub fn histogram_density(samples: &[f64], bin_edges: &[f64]) -> Result<HistogramEstimate> {
    check_edges(bin_edges)?;
    let bins = bin_edges.len() - 1;
    let mut counts = alloc::vec![0_u64; bins];
    let (lo, hi) = (bin_edges[0], bin_edges[bins]);
    for &v in samples {
        if v < lo || v > hi || v.is_nan() {
            continue;
        }
        let idx = bin_edges.partition_point(|&e| e <= v).saturating_sub(1);
        counts[idx.min(bins - 1)] += 1;
    }
    let n = samples.len() as f64;
    let mut densities = Vec::with_capacity(bins);
    let mut std_errors = Vec::with_capacity(bins);
    for (i, &c) in counts.iter().enumerate() {
        let width = bin_edges[i + 1] - bin_edges[i];
        let (d, se) = if samples.is_empty() {
            (0.0, 0.0)
        } else {
            let p = c as f64 / n;
            (p / width, libm::sqrt(p * (1.0 - p) / n) / width)
        };
        densities.push(d);
        std_errors.push(se);
    }
    Ok(HistogramEstimate {
        bin_edges: bin_edges.to_vec(),
        densities,
        std_errors,
        n_samples: samples.len() as u64,
    })
}

/// Fraction of samples in the open interval `(α, β)` and its binomial
/// standard error. Infinite bounds are allowed.
pub fn estimate_interval_prob(samples: &[f64], alpha: f64, beta: f64) -> Result<(f64, f64)> {
    if !(alpha < beta) {
        return Err(Error::InvalidRange {
            lower: alpha,
            upper: beta,
        });
    }
    if samples.is_empty() {
        return Err(Error::InvalidConfig("no samples"));
    }
    let n = samples.len() as f64;
    let inside = samples.iter().filter(|&&v| alpha < v && v < beta).count() as f64;
    let p = inside / n;
    Ok((p, libm::sqrt(p * (1.0 - p) / n)))
}
