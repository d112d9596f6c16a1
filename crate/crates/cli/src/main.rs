use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use winding::args::Cli;
use winding::error::{exit, CliError};

fn emit(cli: &Cli) -> Result<i32, CliError> {
    let (table, code) = winding::run(cli)?;
    let format = cli.common.format.into();
    match &cli.common.output {
        Some(path) => {
            let mut out = BufWriter::new(File::create(path)?);
            table.write(&mut out, format)?;
            out.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            table.write(&mut out, format)?;
            out.flush()?;
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match emit(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("winding: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
