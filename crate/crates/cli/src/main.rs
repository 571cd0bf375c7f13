//! `pcan`: subgraph-density census, PCAN/sPCAN embeddings, kernel random
//! graph generation and Monte Carlo verification from the command line.

mod census;
mod embed;
mod generate;
mod output;
mod verify;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcan_core::census::parse_config_list;
use pcan_core::{default_configuration_set, CountMode, SubgraphConfig};

#[derive(Parser)]
#[command(name = "pcan", version, about = "Principal component analysis of network samples")]
struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count configurations in every graph of a manifest.
    Census(census::CensusArgs),
    /// Embed a sample with PCAN or sPCAN.
    Embed(embed::EmbedArgs),
    /// Sample graphs from a kernel.
    Generate(generate::GenerateArgs),
    /// Run Monte Carlo checks.
    Verify(verify::VerifyArgs),
}

/// Flags shared by `census` and `embed`.
#[derive(Args)]
struct CountArgs {
    /// CSV with columns id,path[,label].
    #[arg(long)]
    manifest: PathBuf,

    /// Comma-separated configurations (default: all nine).
    #[arg(long, value_parser = parse_configs)]
    configs: Option<Configs>,

    #[arg(long, value_enum, default_value_t = Mode::Copies)]
    mode: Mode,

    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

impl CountArgs {
    fn configs(&self) -> Vec<SubgraphConfig> {
        self.configs
            .clone()
            .map_or_else(default_configuration_set, |c| c.0)
    }
}

#[derive(Clone)]
struct Configs(Vec<SubgraphConfig>);

fn parse_configs(s: &str) -> Result<Configs, String> {
    parse_config_list(s).map(Configs).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Copies,
    Induced,
}

impl From<Mode> for CountMode {
    fn from(m: Mode) -> CountMode {
        match m {
            Mode::Copies => CountMode::Copies,
            Mode::Induced => CountMode::Induced,
        }
    }
}

/// Number of components: a positive count or `all`.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Components {
    All,
    Count(usize),
}

impl FromStr for Components {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Components::All);
        }
        match s.parse::<usize>() {
            Ok(0) | Err(_) => Err(format!("expected a positive integer or `all`, got `{s}`")),
            Ok(r) => Ok(Components::Count(r)),
        }
    }
}

impl fmt::Display for Components {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Components::All => f.write_str("all"),
            Components::Count(r) => write!(f, "{r}"),
        }
    }
}

/// Invalid flag combinations; reported with usage status 2.
#[derive(Debug)]
struct UsageError(Vec<String>);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid arguments: {}", self.0.join("; "))
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Census(args) => census::run(args),
        Command::Embed(args) => embed::run(args),
        Command::Generate(args) => generate::run(args),
        Command::Verify(args) => verify::run(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
