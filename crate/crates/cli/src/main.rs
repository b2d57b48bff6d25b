//! `rayleigh-kit`: Rayleigh differences, rank-3 certificates and small
//! rank-3 enumeration from the command line.
//!
//! Exit status is 0 on success, 1 when a check fails, 2 on usage or input
//! errors.

mod commands;
mod input;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "rayleigh-kit", version, about = "Rayleigh differences and rank-3 certificates for matroids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Pair to examine, as `e,f`. Repeatable. Default: every pair.
    #[arg(long = "pairs", global = true, value_name = "E,F")]
    pub pairs: Vec<String>,

    /// Examine every pair (the default when no --pairs is given).
    #[arg(long, global = true, conflicts_with = "pairs")]
    pub all_pairs: bool,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Number of random weight vectors per matroid.
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,

    /// Worker threads. Output order does not depend on this.
    #[arg(long, global = true, env = "RAYLEIGH_KIT_JOBS", default_value_t = 1)]
    pub jobs: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output files into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify ΔM ≥ 0 for each selected pair (randomized search above rank 3).
    Verify {
        /// Matroid files or catalog names (`K4`, `fig2.III`, `U_3_5`, `rank3:6`).
        #[arg(required = true)]
        matroids: Vec<String>,
    },
    /// Print ΔM{e,f} as a polynomial.
    Delta {
        matroid: String,
        /// Pair given positionally instead of with --pairs.
        #[arg(num_args = 2, value_names = ["E", "F"])]
        pair: Vec<String>,
    },
    /// Print the full certificate for each selected pair.
    Certificate { matroid: String },
    /// Recompute the coefficient tables for the three quartic monomial shapes.
    Tables {
        /// Largest ambient matroid searched for the P column (4..=8).
        #[arg(long, default_value_t = 7)]
        max_ambient: usize,
    },
    /// List all simple rank-3 matroids on N points.
    Enumerate { n: usize },
    /// Check negative correlation exactly at random dyadic weights.
    Sample {
        #[arg(required = true)]
        matroids: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
        }
    }
}

/// A finished command: its report and whether every check passed.
pub struct Outcome {
    pub report: String,
    pub ok: bool,
}

#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure { message: message.into(), code: 2 }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::usage(format!("i/o error: {e}"))
    }
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), contents)?;
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    if cli.jobs == 0 {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Failure::usage(format!("thread pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Verify { matroids } => commands::verify(cli, matroids),
        Command::Delta { matroid, pair } => commands::delta(cli, matroid, pair),
        Command::Certificate { matroid } => commands::certificate(cli, matroid),
        Command::Tables { max_ambient } => commands::tables(cli, *max_ambient),
        Command::Enumerate { n } => commands::enumerate(cli, *n),
        Command::Sample { matroids } => commands::sample(cli, matroids),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.report);
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("rayleigh-kit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
