use rayon::prelude::*;

use winding_core::montecarlo::{simulate_winding, SimConfig, WindingSample};

use crate::error::{usage, CliError};

/// `sample_batch` over a rayon pool. Samples come back in path order and the
/// reported error is the one with the smallest path index, so the result does
/// not depend on the number of threads.
pub fn par_sample_batch(
    cfg: &SimConfig,
    threads: Option<usize>,
) -> Result<Vec<WindingSample>, CliError> {
    cfg.validate()?;
    let run = || {
        (0..cfg.n_paths)
            .into_par_iter()
            .map(|i| simulate_winding(cfg, i))
            .collect::<Vec<_>>()
    };
    let results = match threads {
        Some(0) => return Err(usage("--threads must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| usage(e.to_string()))?
            .install(run),
        None => run(),
    };
    Ok(results.into_iter().collect::<Result<Vec<_>, _>>()?)
}
