//! Command-line front end for `winding-core`: every command produces a
//! [`table::ResultTable`] written as CSV (default) or JSON.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod error;
pub mod grid;
pub mod sim;
pub mod table;
pub mod verify;

use args::{Cli, Command};
use error::{exit, CliError};
use table::ResultTable;

/// Runs one command; returns the table and the process exit code it implies.
pub fn run(cli: &Cli) -> Result<(ResultTable, i32), CliError> {
    let spec = commands::quadrature_spec(cli.common.tol)?;
    let table = match &cli.command {
        Command::Density(a) => commands::cmd_density(a, &spec)?,
        Command::Expand(a) => commands::cmd_expand(a, &spec)?,
        Command::Lll(a) => commands::cmd_lll(a, &spec)?,
        Command::Simulate(a) => commands::cmd_simulate(a, &spec)?,
        Command::Verify(a) => {
            let checks = verify::run_suite(a.suite, a.seed, &spec)?;
            let mut table = verify::checks_table(&checks);
            table.set_meta("command", "verify");
            table.set_meta("parameters", format!("suite={:?}", a.suite));
            table.set_meta("seed", a.seed);
            table.set_meta("version", env!("CARGO_PKG_VERSION"));
            table.set_meta("rel_tol", format!("{:?}", spec.rel_tol));
            table.set_meta("abs_tol", format!("{:?}", spec.abs_tol));
            let code = if checks.iter().all(|c| c.pass) {
                exit::OK
            } else {
                exit::VERIFY_FAILED
            };
            return Ok((table, code));
        }
    };
    Ok((table, exit::OK))
}
