//! `diffractio`: command-line frontend.
//!
//! Exit codes: 0 on success, 2 for usage and parameter errors, 3 when a
//! resource cap or accuracy target is hit, 1 for anything else.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use diffractio::Error;

#[derive(Debug, Parser)]
#[command(name = "diffractio", version, about = "Diffraction of lattice, aperiodic and random point structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Random seed for sampling subcommands.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Autocorrelation coefficients of a substitution sequence.
    Autocorr(commands::AutocorrArgs),
    /// Diffraction of a lattice comb or a closed-form random structure.
    Diffract(commands::DiffractArgs),
    /// Distribution function of the Thue-Morse type singular continuous measure.
    Distfun(commands::DistfunArgs),
    /// Bragg peaks or points of a model set.
    Modelset(commands::ModelsetArgs),
    /// Exact homometry test for two periodic weight lists.
    Homometry(commands::HomometryArgs),
    /// Diffraction or renewal measure of a renewal process.
    Renewal(commands::RenewalArgs),
    /// Sample a random structure, optionally returning its periodogram.
    Simulate(commands::SimulateArgs),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parameter(_) | Error::Validation(_) | Error::Parse(_) | Error::Json(_) | Error::Csv(_) => 2,
        Error::Resource(_) | Error::Accuracy { .. } => 3,
        Error::Numerical(_) | Error::Internal(_) | Error::Io(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = commands::run(&cli.command, &cli.common).and_then(|bytes| {
        match &cli.common.out {
            Some(path) => std::fs::write(path, &bytes)?,
            None => std::io::stdout().lock().write_all(&bytes)?,
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
