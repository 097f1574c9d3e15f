//! Command-line front end: point solves, parameter sweeps, nines tables,
//! centralized-vs-distributed CU analysis, and Monte Carlo validation.
//!
//! Exit codes: 0 on success, 1 when a simulation fails its statistical
//! check against the analytic value, 2 on validation or usage errors.

mod cmd;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "vran-avail",
    version,
    about = "Availability models for virtualized, disaggregated RAN deployments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one configuration and report per-layer availability.
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Print the platform chain (state labels and generator rows).
        #[arg(long)]
        dump_chain: bool,
        /// Model sensitivity variant (supported: drop-eq5).
        #[arg(long)]
        model_variant: Option<String>,
    },
    /// Evaluate a parameter grid; one output row per grid point.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        model_variant: Option<String>,
    },
    /// Evaluate a grid and group the points by their nines triple.
    Table {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the ungrouped per-point CSV here.
        #[arg(long)]
        raw_out: Option<PathBuf>,
        #[arg(long)]
        model_variant: Option<String>,
    },
    /// Centralized versus distributed CU placement across cell sites.
    Network {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Write the full outage-count distributions here (CSV).
        #[arg(long)]
        pmf_out: Option<PathBuf>,
        #[arg(long)]
        model_variant: Option<String>,
    },
    /// Run the replica-level simulator against the analytic value.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the seed in the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the horizon in the config (duration string).
        #[arg(long)]
        horizon: Option<String>,
    },
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Solve {
            config,
            out,
            format,
            dump_chain,
            model_variant,
        } => {
            let variant = cmd::parse_variant(model_variant.as_deref())?;
            cmd::solve::run(&config, out.as_deref(), format, dump_chain, variant)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            config,
            out,
            format,
            model_variant,
        } => {
            let variant = cmd::parse_variant(model_variant.as_deref())?;
            cmd::sweep::run(&config, out.as_deref(), format, variant)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table {
            config,
            out,
            raw_out,
            model_variant,
        } => {
            let variant = cmd::parse_variant(model_variant.as_deref())?;
            cmd::table::run(&config, out.as_deref(), raw_out.as_deref(), variant)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Network {
            config,
            out,
            format,
            pmf_out,
            model_variant,
        } => {
            let variant = cmd::parse_variant(model_variant.as_deref())?;
            cmd::network::run(&config, out.as_deref(), format, pmf_out.as_deref(), variant)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate {
            config,
            seed,
            horizon,
        } => cmd::simulate::run(&config, seed, horizon.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
