mod cli;
mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use gmb_love::exec::Execution;
use gmb_love::Error;

use cli::{Cli, Command};
use output::InputError;

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_CONVERGENCE: u8 = 4;

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<serde_json::Error>() || cause.is::<InputError>() {
            return EXIT_PARSE;
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::NonConvergence { .. }
                | Error::TermCap { .. }
                | Error::Bracketing { .. }
                | Error::RootCount { .. } => EXIT_CONVERGENCE,
                _ => EXIT_DOMAIN,
            };
        }
    }
    EXIT_IO
}

fn open_output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Runs the command; `Ok(false)` means the output was written but some rows
/// did not converge.
fn run(cli: &Cli) -> anyhow::Result<bool> {
    let mode = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let mut converged = true;
    match &cli.command {
        Command::Modulus(args) => {
            let mut out = open_output(args.out.as_deref())?;
            commands::modulus(args, mode, &mut out)?;
            out.flush()?;
        }
        Command::Powerlaw(args) => {
            let mut out = open_output(args.out.as_deref())?;
            commands::powerlaw(args, &mut out)?;
            out.flush()?;
        }
        Command::Spectrum(args) => {
            let mut out = open_output(None)?;
            commands::spectrum(args, &mut out)?;
            out.flush()?;
        }
        Command::Invert(args) => {
            let mut out = open_output(args.out.as_deref())?;
            converged = commands::invert(args, mode, &mut out)?;
            out.flush()?;
        }
        Command::Compare(args) => {
            let mut out = open_output(None)?;
            commands::compare(args, mode, &mut out)?;
            out.flush()?;
        }
    }
    Ok(converged)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: some points did not reach the requested tolerance");
            ExitCode::from(EXIT_CONVERGENCE)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
