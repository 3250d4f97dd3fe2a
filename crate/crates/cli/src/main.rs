//! `rankstab`: defects, stabilizers, witnesses and sweeps from the shell.
//!
//! Exit codes: 0 success, 1 other failure, 2 unreadable input, 3 arity,
//! field or size mismatch, 4 no verified solution.

mod commands;
mod config;
mod error;
mod inputs;
mod sweep;
mod witness_cmd;

use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};

use crate::config::Config;
use crate::error::{CliError, ExitCode};

#[derive(Parser)]
#[command(name = "rankstab", version, about = "Rank-metric stability of matrix presentations")]
struct Cli {
    /// TOML file with default flag values; flags on the command line win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a presentation in normal form.
    Parse { presentation: PathBuf },
    /// Normalized rank defect of a tuple against a presentation, as JSON.
    Defect { presentation: PathBuf, tuple: PathBuf },
    /// Replace an approximate solution by a verified exact one nearby.
    Stabilize(commands::StabilizeArgs),
    /// Generate a witness tuple and print its defect as CSV.
    Witness(witness_cmd::WitnessArgs),
    /// Randomized stabilization experiment over a range of sizes, as CSV.
    Sweep(sweep::SweepArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Parse { presentation } => commands::parse(&presentation),
        Command::Defect { presentation, tuple } => commands::defect(&presentation, &tuple),
        Command::Stabilize(args) => commands::stabilize(args, &config),
        Command::Witness(args) => witness_cmd::run(args),
        Command::Sweep(args) => sweep::run(args, &config),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        if let CliError::NotStabilized { attempt: Some(attempt), .. } = &err {
            if let Ok(text) = serde_json::to_string_pretty(attempt) {
                println!("{text}");
            }
        }
        eprintln!("rankstab: {err}");
        let code = err.code();
        debug_assert_ne!(code, ExitCode::Ok);
        process::exit(code as i32);
    }
}
