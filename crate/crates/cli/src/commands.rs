use std::f64::consts::FRAC_PI_2;

use winding_core::density::{density_f1, density_f2, interval_probability, DensityQuery};
use winding_core::expansion::{
    lll_coefficients, lll_correction, log_sqrt, theorem1_sum, theorem2_sum, ExpansionCoefficients,
};
use winding_core::montecarlo::{estimate_interval_prob, histogram_density, SimConfig};
use winding_core::numerics::integrate_breakpoints;
use winding_core::QuadratureSpec;

use crate::args::{DensityArgs, DensityFormula, ExpandArgs, ExpandMode, LllArgs, SimulateArgs};
use crate::error::{usage, CliError};
use crate::grid::parse_grid;
use crate::sim::par_sample_batch;
use crate::table::{Cell, ColumnType::*, ResultTable};

/// Quadrature settings for a run: defaults with the relative tolerance overridden.
pub fn quadrature_spec(tol: Option<f64>) -> Result<QuadratureSpec, CliError> {
    let spec = match tol {
        Some(t) => QuadratureSpec::default().with_rel_tol(t),
        None => QuadratureSpec::default(),
    };
    spec.validate()?;
    Ok(spec)
}

fn stamp(table: &mut ResultTable, command: &str, parameters: String, spec: &QuadratureSpec) {
    table.set_meta("command", command);
    table.set_meta("parameters", parameters);
    table.set_meta("version", env!("CARGO_PKG_VERSION"));
    table.set_meta("rel_tol", format!("{:?}", spec.rel_tol));
    table.set_meta("abs_tol", format!("{:?}", spec.abs_tol));
    table.set_meta("max_subdivisions", spec.max_subdivisions);
}

pub fn cmd_density(args: &DensityArgs, spec: &QuadratureSpec) -> Result<ResultTable, CliError> {
    let thetas = parse_grid(&args.theta_grid)?;
    DensityQuery::new(0.0, args.t, args.rho)?;
    let columns: &[(&str, _)] = match args.formula {
        DensityFormula::F1 => &[("theta", Real), ("f1", Real)],
        DensityFormula::F2 => &[("theta", Real), ("f2", Real)],
        DensityFormula::Both => &[
            ("theta", Real),
            ("f1", Real),
            ("f2", Real),
            ("abs_diff", Real),
        ],
    };
    let mut table = ResultTable::new(columns);
    stamp(
        &mut table,
        "density",
        format!(
            "theta_grid={} t={:?} rho={:?} formula={:?}",
            args.theta_grid, args.t, args.rho, args.formula
        ),
        spec,
    );
    for theta in thetas {
        let q = DensityQuery::new(theta, args.t, args.rho)?;
        let row: Vec<Cell> = match args.formula {
            DensityFormula::F1 => vec![theta.into(), density_f1(&q, spec)?.into()],
            DensityFormula::F2 => vec![theta.into(), density_f2(&q, spec)?.into()],
            DensityFormula::Both => {
                let (a, b) = (density_f1(&q, spec)?, density_f2(&q, spec)?);
                vec![theta.into(), a.into(), b.into(), (a - b).abs().into()]
            }
        };
        table.push(row);
    }
    Ok(table)
}

pub fn cmd_expand(args: &ExpandArgs, spec: &QuadratureSpec) -> Result<ResultTable, CliError> {
    let ts = parse_grid(&args.t_grid)?;
    let thetas = parse_grid(&args.theta_grid)?;
    let order = args.order;
    let rho = match (args.mode, args.rho) {
        (ExpandMode::Local, Some(r)) if r != 1.0 => {
            return Err(usage(
                "--rho applies to spitzer mode only (local mode uses rho = 1)",
            ))
        }
        (_, r) => r.unwrap_or(1.0),
    };
    let parameters = format!(
        "mode={:?} N={order} t_grid={} theta_grid={} rho={rho:?} coeffs={}",
        args.mode, args.t_grid, args.theta_grid, args.coeffs
    );

    let mut table = match (args.mode, args.coeffs) {
        (ExpandMode::Spitzer, true) => {
            let mut table = ResultTable::new(&[
                ("n", Int),
                ("theta", Real),
                ("t", Real),
                ("beta_angle", Real),
                ("A_n", Real),
                ("c_n", Real),
                ("C_n", Real),
            ]);
            for &t in &ts {
                for &theta in &thetas {
                    let co = ExpansionCoefficients::compute(theta, t, rho, order, spec)?;
                    for n in 0..=order {
                        table.push(vec![
                            n.into(),
                            theta.into(),
                            t.into(),
                            co.beta_angle.into(),
                            co.a_theta[n].into(),
                            co.c[n].into(),
                            co.c_finite[n].into(),
                        ]);
                    }
                }
            }
            table
        }
        (ExpandMode::Local, true) => {
            let names: Vec<String> = (0..=order).map(|j| format!("theta^{j}")).collect();
            let mut columns = vec![("n", Int)];
            columns.extend(names.iter().map(|s| (s.as_str(), Real)));
            let mut table = ResultTable::new(&columns);
            for n in 0..=order {
                let g = winding_core::expansion::g_poly(n)?;
                let mut row: Vec<Cell> = vec![n.into()];
                row.extend((0..=order).map(|j| Cell::Real(g.get(j).copied().unwrap_or(0.0))));
                table.push(row);
            }
            table
        }
        (mode, false) => {
            let mut columns = vec![
                ("t", Real),
                ("theta", Real),
                ("partial_sum", Real),
                ("exact", Real),
                ("residual", Real),
                ("residual_scaled", Real),
            ];
            if mode == ExpandMode::Spitzer {
                columns.push(("residual_envelope", Real));
            }
            let mut table = ResultTable::new(&columns);
            for &t in &ts {
                let l = log_sqrt(t);
                for &theta in &thetas {
                    let (sum, exact) = match mode {
                        ExpandMode::Spitzer => {
                            let sum = theorem1_sum(theta, t, rho, order, spec)?;
                            let q = DensityQuery::new(theta * l, t, rho)?;
                            (sum, l * density_f2(&q, spec)?)
                        }
                        ExpandMode::Local => {
                            let sum = theorem2_sum(theta, t, order)?;
                            let q = DensityQuery::new(theta, t, 1.0)?;
                            (sum, l * density_f2(&q, spec)?)
                        }
                    };
                    let residual = exact - sum;
                    let scaled = residual * l.powi(order as i32 + 1);
                    let mut row: Vec<Cell> = vec![
                        t.into(),
                        theta.into(),
                        sum.into(),
                        exact.into(),
                        residual.into(),
                        scaled.into(),
                    ];
                    if mode == ExpandMode::Spitzer {
                        let w = 1.0 + theta * theta;
                        row.push((scaled * w.powf(0.5 * order as f64 + 1.0)).into());
                    }
                    table.push(row);
                }
            }
            table
        }
    };
    stamp(&mut table, "expand", parameters, spec);
    Ok(table)
}

pub fn cmd_lll(args: &LllArgs, spec: &QuadratureSpec) -> Result<ResultTable, CliError> {
    let ts = parse_grid(&args.t_grid)?;
    let coeffs = lll_coefficients(args.alpha, args.beta, args.order)?;
    let mut table = ResultTable::new(&[
        ("t", Real),
        ("exact", Real),
        ("expansion", Real),
        ("residual", Real),
    ]);
    stamp(
        &mut table,
        "lll",
        format!(
            "alpha={:?} beta={:?} t_grid={} N={}",
            args.alpha, args.beta, args.t_grid, args.order
        ),
        spec,
    );
    table.set_meta(
        "G_n",
        coeffs
            .iter()
            .map(|g| format!("{g:?}"))
            .collect::<Vec<_>>()
            .join(","),
    );
    for t in ts {
        let expansion = lll_correction(args.alpha, args.beta, t, args.order)?;
        let exact = log_sqrt(t) * interval_probability(args.alpha, args.beta, t, 1.0, spec)?;
        table.push(vec![
            t.into(),
            exact.into(),
            expansion.into(),
            (exact - expansion).into(),
        ]);
    }
    Ok(table)
}

/// Mean of `density_f2` over `[a, b]`.
pub fn bin_average(
    a: f64,
    b: f64,
    t: f64,
    rho: f64,
    spec: &QuadratureSpec,
) -> Result<f64, CliError> {
    let mut pts = vec![a];
    pts.extend(
        [-FRAC_PI_2, 0.0, FRAC_PI_2]
            .into_iter()
            .filter(|&p| p > a && p < b),
    );
    pts.push(b);
    let mut failure = None;
    let est = integrate_breakpoints(
        |theta| match density_f2(&DensityQuery { theta, t, rho }, spec) {
            Ok(f) => f,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        &pts,
        spec,
    )?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(est.value / (b - a))
}

pub fn cmd_simulate(args: &SimulateArgs, spec: &QuadratureSpec) -> Result<ResultTable, CliError> {
    let cfg = SimConfig {
        t: args.t,
        rho: args.rho,
        n_paths: args.n_paths,
        h_max: args.h_max.unwrap_or(args.t / 1000.0),
        kappa: args.kappa,
        master_seed: args.seed,
    };
    cfg.validate()?;
    let interval = match (args.alpha, args.beta, args.bins) {
        (Some(_), Some(_), Some(_)) => return Err(usage("use either --bins or --alpha/--beta")),
        (Some(a), Some(b), None) => {
            if !(a < b) {
                return Err(winding_core::Error::InvalidRange { lower: a, upper: b }.into());
            }
            Some((a, b))
        }
        _ => None,
    };
    let bins = args.bins.unwrap_or(40);
    let edges: Vec<f64> = if interval.is_none() {
        if bins == 0 || !(args.lo < args.hi) {
            return Err(usage("need --bins >= 1 and --lo < --hi"));
        }
        let w = (args.hi - args.lo) / bins as f64;
        (0..=bins)
            .map(|i| {
                if i == bins {
                    args.hi
                } else {
                    args.lo + w * i as f64
                }
            })
            .collect()
    } else {
        Vec::new()
    };

    let samples: Vec<f64> = par_sample_batch(&cfg, args.threads)?
        .into_iter()
        .map(|s| s.theta_t)
        .collect();

    let mut table = if let Some((a, b)) = interval {
        let (p, se) = estimate_interval_prob(&samples, a, b)?;
        let exact = interval_probability(a, b, args.t, args.rho, spec)?;
        let mut table = ResultTable::new(&[
            ("alpha", Real),
            ("beta", Real),
            ("p_hat", Real),
            ("std_err", Real),
            ("exact", Real),
            ("z_score", Real),
        ]);
        table.push(vec![
            a.into(),
            b.into(),
            p.into(),
            se.into(),
            exact.into(),
            z_score(p, exact, se).into(),
        ]);
        table
    } else {
        let hist = histogram_density(&samples, &edges)?;
        let mut table = ResultTable::new(&[
            ("bin_center", Real),
            ("mc_density", Real),
            ("std_err", Real),
            ("exact_density", Real),
            ("z_score", Real),
        ]);
        for i in 0..hist.bin_count() {
            let (a, b) = (edges[i], edges[i + 1]);
            let exact = bin_average(a, b, args.t, args.rho, spec)?;
            let (d, se) = (hist.densities[i], hist.std_errors[i]);
            table.push(vec![
                (0.5 * (a + b)).into(),
                d.into(),
                se.into(),
                exact.into(),
                z_score(d, exact, se).into(),
            ]);
        }
        table
    };
    stamp(
        &mut table,
        "simulate",
        format!(
            "t={:?} rho={:?} n_paths={} h_max={:?} kappa={:?} bins={} lo={:?} hi={:?} alpha={:?} beta={:?}",
            cfg.t, cfg.rho, cfg.n_paths, cfg.h_max, cfg.kappa, bins, args.lo, args.hi, args.alpha, args.beta
        ),
        spec,
    );
    table.set_meta("seed", args.seed);
    Ok(table)
}

fn z_score(estimate: f64, exact: f64, se: f64) -> f64 {
    if se > 0.0 {
        (estimate - exact) / se
    } else if estimate == exact {
        0.0
    } else {
        f64::INFINITY.copysign(estimate - exact)
    }
}
