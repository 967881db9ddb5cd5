//! `anacont` command-line front end.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 on numerical failure.

mod args;
mod commands;
mod error;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::Output;
use error::CliError;

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let seed = cli.common.seed;
    let tol = cli.common.overrides();
    match &cli.command {
        Command::Continue(a) => commands::run_continue(a, seed, tol),
        Command::Monodromy(a) => commands::run_monodromy(a, seed, tol),
        Command::BoundaryProbe(a) => commands::run_boundary_probe(a, seed, tol),
        Command::LewyVerify(a) => commands::run_lewy(a, seed, tol),
        Command::LaplaceVerify(a) => commands::run_laplace(a, seed, tol),
        Command::BlaschkeDemo(a) => commands::run_blaschke(a, seed, tol),
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<(), CliError> {
    if let Some(path) = &cli.common.emit_csv {
        write_file(path, &anacont::io::to_csv(&out.csv_header, &out.csv_rows))?;
    }
    match &cli.common.output {
        Some(path) => write_file(path, &out.json),
        None => std::io::stdout()
            .write_all(out.json.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli).and_then(|out| emit(&cli, &out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
