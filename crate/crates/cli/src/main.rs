//! Command-line driver: runs mechanisms on instances, fuzzes deviations,
//! sweeps Monte Carlo grids, and manages the bundled fixtures.
//!
//! Exit codes: 0 success (or an expected result), 1 usage error, 2 I/O or
//! malformed input, 3 instance over the brute-force cap, 4 property
//! violation (or an expected violation that failed to appear).

mod commands;
mod kv;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_IO: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;
pub const EXIT_VIOLATION: u8 = 4;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "SPECTRUM_AUCTIONS_OUT";

/// A failure carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_IO,
            message: message.into(),
        }
    }

    pub fn violation(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VIOLATION,
            message: message.into(),
        }
    }

    /// Classifies a core error raised while loading inputs or running a
    /// mechanism: capacity breaches get their own code, everything else
    /// counts as bad input.
    pub fn from_run(err: spectrum_auctions::Error) -> Self {
        let code = match &err {
            spectrum_auctions::Error::InstanceTooLarge { .. } => EXIT_CAPACITY,
            _ => EXIT_IO,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "spectrum-auctions",
    version,
    about = "Sealed-bid spectrum auction simulator over multi-operator conflict graphs"
)]
struct Cli {
    /// Flat `key = value` config file providing defaults; flags override.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Output directory (default: $SPECTRUM_AUCTIONS_OUT, then ./out).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run mechanisms on one instance and write outcome documents.
    Run(RunArgs),
    /// Sample adversarial deviations; nonzero exit on unexpected gains.
    Fuzz(FuzzArgs),
    /// Monte Carlo experiment grids with per-replicate and aggregate CSVs.
    Sweep(SweepArgs),
    /// List, validate, or emit the bundled example instances.
    Fixtures(FixturesArgs),
}

#[derive(Args, Debug, Default)]
struct RunArgs {
    /// Bundled instance to run (fig2, sec4, sec5).
    #[arg(long)]
    fixture: Option<String>,

    /// Topology document (with --profiles, alternative to --fixture).
    #[arg(long, value_name = "FILE")]
    topology: Option<PathBuf>,

    /// Profiles document accompanying --topology.
    #[arg(long, value_name = "FILE")]
    profiles: Option<PathBuf>,

    /// Mechanisms to run, comma separated.
    #[arg(long, value_delimiter = ',')]
    mechanism: Vec<String>,

    /// Channels on auction (defaults to the fixture's own count, else 1).
    #[arg(long)]
    k: Option<u32>,

    /// Base-station cap for the brute-force mechanism.
    #[arg(long)]
    vcg_cap: Option<usize>,
}

#[derive(Args, Debug, Default)]
struct FuzzArgs {
    /// Mechanism to fuzz: sc-spam, nud-wspam, or nud-am.
    #[arg(long)]
    mechanism: Option<String>,

    /// Minimum number of deviation reports to collect.
    #[arg(long)]
    trials: Option<usize>,

    /// Base seed for instance and deviation sampling.
    #[arg(long)]
    seed: Option<u64>,

    /// Fuzz a bundled instance instead of random topologies; for nud-am
    /// this selects the documented counterexample (default sec4).
    #[arg(long)]
    fixture: Option<String>,

    /// Sizes of the sampled topologies, as lo:hi[:step] or a comma list.
    #[arg(long)]
    sizes: Option<String>,

    /// Channels on auction for ladder instances.
    #[arg(long)]
    k: Option<u32>,

    /// Per-pair degree bound of the sampled topologies.
    #[arg(long)]
    degree_max: Option<u32>,
}

#[derive(Args, Debug, Default)]
struct SweepArgs {
    /// Experiment regime: single-channel, uniform-demand-2, nonuniform.
    #[arg(long)]
    regime: Option<String>,

    /// Sizes as lo:hi[:step] or a comma list of totals.
    #[arg(long)]
    sizes: Option<String>,

    /// Replicates per size.
    #[arg(long)]
    replicates: Option<u32>,

    /// Channels on auction.
    #[arg(long)]
    k: Option<u32>,

    /// Base seed; replicate seeds derive from it.
    #[arg(long)]
    seed: Option<u64>,

    /// Mechanisms, comma separated (defaults depend on the regime).
    #[arg(long)]
    mechanisms: Option<String>,

    /// Number of operators.
    #[arg(long)]
    operators: Option<usize>,

    /// Per-pair degree bound of the configuration model.
    #[arg(long)]
    degree_max: Option<u32>,

    /// Base-station cap for the brute-force mechanism.
    #[arg(long)]
    vcg_cap: Option<usize>,
}

#[derive(Args, Debug, Default)]
struct FixturesArgs {
    /// Write every fixture's topology and profile documents here.
    #[arg(long, value_name = "DIR")]
    emit: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes, not usage errors.
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let result = run(cli);
    match result {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let config = kv::Config::load(cli.config.as_deref())?;
    let out_dir = cli
        .out
        .or_else(|| config.get_path("out"))
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));

    match cli.command {
        Command::Run(args) => commands::cmd_run(args, &config, &out_dir),
        Command::Fuzz(args) => commands::cmd_fuzz(args, &config, &out_dir),
        Command::Sweep(args) => commands::cmd_sweep(args, &config, &out_dir),
        Command::Fixtures(args) => commands::cmd_fixtures(args, &out_dir),
    }
}
