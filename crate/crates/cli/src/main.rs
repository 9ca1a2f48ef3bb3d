//! `fivedec`: five-decision tests, power and sample sizes, simulations and
//! decision-region data from the command line.
//!
//! Exit codes: 0 on success (including "no rejection"), 2 for usage, parse
//! and domain errors, 3 when the data cannot support the test.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{source_name}:{line}: {msg}")]
    Parse { source_name: String, line: u64, msg: String },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("degenerate data: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Lib(#[from] fivedec::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Degenerate(_) | CliError::Lib(fivedec::Error::Degenerate(_)) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fivedec", version, about = "Five-decision hypothesis tests for a single parameter")]
struct Cli {
    /// Decimals shown in text output.
    #[arg(long, global = true, default_value_t = 4)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Two-sample t-test and the decisions of all three procedures.
    Decide(DecideArgs),
    /// Asymptotic power of a Wald-type test.
    Power(PowerArgs),
    /// Sample size for a target power, non-strict and strict.
    Samplesize(SampleSizeArgs),
    /// Relative sample-size reduction table.
    Table(TableArgs),
    /// Monte Carlo frequencies of each decision.
    Simulate(SimulateArgs),
    /// Decision-region boundaries for plotting.
    Regions(RegionsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct Source {
    /// Inline summaries nA,meanA,sdA,nB,meanB,sdB.
    #[arg(long, group = "source", allow_hyphen_values = true)]
    pub summary: Option<String>,
    /// CSV of raw observations with header group,value.
    #[arg(long, group = "source")]
    pub input: Option<PathBuf>,
    /// CSV of summaries with header group,n,mean,sd.
    #[arg(long, group = "source")]
    pub summary_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta0: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    H1,
    H2,
    H4,
    H5,
}

impl From<Target> for fivedec::Hypothesis {
    fn from(t: Target) -> Self {
        match t {
            Target::H1 => fivedec::Hypothesis::H1,
            Target::H2 => fivedec::Hypothesis::H2,
            Target::H4 => fivedec::Hypothesis::H4,
            Target::H5 => fivedec::Hypothesis::H5,
        }
    }
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Standardized effect (θ - θ₀)/SE.
    #[arg(long, allow_hyphen_values = true)]
    pub effect: f64,
    /// Hypothesis to reject; all four when omitted.
    #[arg(long, value_enum, ignore_case = true)]
    pub target: Option<Target>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[group(id = "variance", required = true, multiple = false)]
pub struct Variance {
    /// Asymptotic variance τ² of √n (θ̂ - θ).
    #[arg(long, group = "variance")]
    pub tau_sq: Option<f64>,
    /// Asymptotic standard deviation τ.
    #[arg(long, group = "variance")]
    pub tau: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SampleSizeArgs {
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long)]
    pub power: f64,
    /// Targeted difference θ - θ₀.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: f64,
    #[command(flatten)]
    pub variance: Variance,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_delimiter = ',', default_values_t = fivedec::power::TABLE_ALPHAS)]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = fivedec::power::TABLE_POWERS)]
    pub power: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Observations per group.
    #[arg(long)]
    pub n: u64,
    /// Standardized mean difference (μ_A - μ_B)/σ.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub effect: f64,
    /// Run a wrong-rejection grid over these effects instead.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub effects: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// five-decision, kaiser or jones-tukey.
    #[arg(long, default_value = "five-decision")]
    pub procedure: fivedec::Procedure,
    /// Worker threads; the report does not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NullKind {
    T,
    Normal,
}

#[derive(Debug, Args)]
pub struct RegionsArgs {
    #[arg(long, value_enum, default_value_t = NullKind::T)]
    pub null: NullKind,
    #[arg(long, default_value_t = 18.0)]
    pub df: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [0.10, 0.05, 0.01])]
    pub alpha: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

fn run(cli: Cli) -> Result<String, CliError> {
    let precision = cli.precision;
    match cli.command {
        Command::Decide(args) => commands::decide(&args, precision),
        Command::Power(args) => commands::power(&args, precision),
        Command::Samplesize(args) => commands::samplesize(&args, precision),
        Command::Table(args) => commands::table(&args),
        Command::Simulate(args) => commands::simulate(&args, precision),
        Command::Regions(args) => commands::regions(&args, precision),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("fivedec: {e}");
            if matches!(e, CliError::Usage(_) | CliError::Lib(fivedec::Error::Domain(_))) {
                eprintln!("see `fivedec --help` for usage");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
