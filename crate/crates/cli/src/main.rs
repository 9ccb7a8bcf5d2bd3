//! `negric` command line.
//!
//! Exit codes: 0 success, 1 usage or internal error (and repro mismatch),
//! 2 uncertified or negative answer, 3 search budget exhausted.

mod commands;
mod repro;

use clap::{Parser, Subcommand};
use commands::Outcome;
use negric::config::{Config, OutputFormat};
use negric::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "negric", version, about = "Negative Ricci certificates for l(u, pi) = (RZ + u) x V")]
struct Cli {
    /// key = value configuration file; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Print JSON instead of a text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the three approaches on one highest weight.
    Classify {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        #[arg(long, value_name = "A1,A2,..")]
        lambda: String,
    },
    /// Classify every highest weight with coordinates up to --max-coeff.
    Scan {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        #[arg(long)]
        max_coeff: i64,
    },
    /// Dominant weights and multiplicities.
    Weights {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        #[arg(long, value_name = "A1,A2,..")]
        lambda: String,
    },
    /// Build the module and print its compact-form matrices.
    Rep {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        #[arg(long, value_name = "A1,A2,..")]
        lambda: String,
        /// Write the matrices to FILE (same as --out).
        #[arg(long, value_name = "FILE")]
        dump: Option<PathBuf>,
    },
    /// Search for a negative Ricci metric on l(u, pi_lambda).
    Verify {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        #[arg(long, value_name = "A1,A2,..")]
        lambda: String,
        /// Ricci evaluations per restart.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Re-check the published classification results.
    Repro {
        #[arg(long, value_enum)]
        only: Option<repro::Group>,
        /// Negative control: corrupt one Cartan matrix.
        #[arg(long, hide = true)]
        inject_wrong_cartan: bool,
    },
}

fn load_config(path: Option<&PathBuf>) -> negric::Result<Config> {
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            Config::parse(&text)
        }
    }
}

fn run(cli: Cli) -> negric::Result<(Outcome, bool)> {
    let mut cfg = load_config(cli.config.as_ref())?;
    let json = cli.json || cfg.format == OutputFormat::Json;
    let mut out = cli.out;
    let outcome = match cli.command {
        Command::Classify { ty, lambda } => commands::classify(&ty, &lambda, &cfg)?,
        Command::Scan { ty, max_coeff } => commands::scan(&ty, max_coeff, &cfg)?,
        Command::Weights { ty, lambda } => commands::weights(&ty, &lambda, &cfg)?,
        Command::Rep { ty, lambda, dump } => {
            out = dump.or(out);
            commands::rep(&ty, &lambda, &cfg)?
        }
        Command::Verify { ty, lambda, budget, seed } => {
            if let Some(b) = budget {
                cfg.budget = b;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            cfg.validate()?;
            commands::verify(&ty, &lambda, &cfg)?
        }
        Command::Repro { only, inject_wrong_cartan } => repro::run(only, inject_wrong_cartan, &cfg)?,
    };
    if let Some(path) = out {
        std::fs::write(&path, outcome.file_json())
            .map_err(|e| Error::Internal(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok((outcome, json))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok((outcome, json)) => {
            if json {
                println!("{}", outcome.json);
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded(_) => 3,
                _ => 1,
            })
        }
    }
}
