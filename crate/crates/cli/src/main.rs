//! `csl`: build and verify Clifford realizations, check boundary
//! decomposition witnesses and obstructions, and run the Hardy-space suites.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use csl_core::clifford::QuaternionSide;

use crate::report::{CliError, Output};

/// Inclusive range of Clifford dimensions, written `8` or `1..13`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimRange {
    pub start: usize,
    pub end: usize,
}

impl FromStr for DimRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("invalid dimension {t:?}: {e}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if start > end {
            return Err(format!("empty range {s}"));
        }
        Ok(Self { start, end })
    }
}

impl DimRange {
    /// The dimensions in the range, each rewritten to `8k + (n mod 8)` when `k` is given.
    pub fn values(&self, k: Option<usize>) -> Vec<usize> {
        (self.start..=self.end)
            .map(|n| k.map_or(n, |k| 8 * k + n % 8))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Left,
    Right,
}

impl From<Side> for QuaternionSide {
    fn from(s: Side) -> Self {
        match s {
            Side::Left => QuaternionSide::Left,
            Side::Right => QuaternionSide::Right,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComponentChoice {
    Plus,
    Minus,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Idempotency,
    Involution,
    Rbc,
    Crb,
    Dirac,
    Kernels,
    Schwartz,
}

#[derive(Debug, Parser)]
#[command(name = "csl", version, about = "Clifford realizations, boundary decompositions and Hardy-space checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report format; csv flattens the numeric suites.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for every randomized step, recorded in the report.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Replace each n by 8k + (n mod 8).
    #[arg(long, global = true)]
    pub k: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the realization of Cl_n as JSON.
    Build {
        #[arg(long)]
        n: DimRange,
        /// Multiplication side used for the quaternionic generators at n = 8k + 2.
        #[arg(long, value_enum, default_value = "left")]
        quaternion_side: Side,
    },
    /// Check generator relations, the volume element and dimension accounting.
    Verify {
        #[arg(long, required_unless_present = "input")]
        n: Option<DimRange>,
        /// Verify a realization read from a JSON file instead of building one.
        #[arg(long, conflicts_with = "n")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "left")]
        quaternion_side: Side,
    },
    /// Check the standard witness, or certify the obstruction for n = 6, 7 mod 8.
    Gilbert {
        #[arg(long)]
        n: DimRange,
        /// Random spinning trials for obstructed dimensions.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Component checked when the spinor space splits (n = 3 mod 8).
        #[arg(long, value_enum, default_value = "plus")]
        component: ComponentChoice,
    },
    /// Run the numeric Hardy-space suites on a periodic grid.
    Hardy {
        #[arg(long)]
        n: Option<usize>,
        /// Boundary dimension; must equal n - 1.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long = "N", default_value_t = 64)]
        points: usize,
        #[arg(long = "L", default_value_t = std::f64::consts::TAU)]
        length: f64,
        /// Random fields per suite.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Suite to run; by default the four multiplier identities.
        #[arg(long, value_enum)]
        suite: Option<Suite>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::iter::once("csl".to_string()).chain(std::env::args().skip(1)).collect();
    let result = commands::run(&cli).and_then(|out: Output| out.emit(&cli, &argv.join(" ")));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Unsupported(_) => 2,
                CliError::Internal(_) => 3,
            })
        }
    }
}
