//! `bpodc`: run dynamic-budget experiments, generate schedules and query
//! exhaustive oracles.

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{OracleQuery, RunArgs, ScheduleArgs};

#[derive(Parser)]
#[command(
    name = "bpodc",
    version,
    about = "Subset selection under dynamic cost budgets"
)]
struct Cli {
    /// Suppress progress messages on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every configured algorithm over the budget schedule and write CSV traces.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides `output` in the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Master seed; overrides `seed` in the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads for the batch.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Generate a random-walk budget schedule.
    Schedule {
        #[arg(long)]
        initial: f64,
        #[arg(long)]
        changes: usize,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        low: f64,
        #[arg(long)]
        high: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Schedule file; a `<stem>_cumulative.csv` is written beside it.
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact answers on tiny instances, printed as `key=value` lines.
    Oracle {
        #[command(subcommand)]
        query: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Optimal feasible subset by exhaustive search.
    Opt {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        budget: f64,
    },
    /// Exact influence spread and its variance for a seed set.
    Ic {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated seed vertices.
        #[arg(long, value_delimiter = ',')]
        seeds: Vec<usize>,
    },
    /// Exact submodularity ratio of the objective.
    Alpha {
        #[arg(long)]
        config: PathBuf,
    },
    /// Cost quantities: smallest marginal cost, curvature and, with a budget, K_B.
    Cost {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        budget: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            config,
            out,
            seed,
            jobs,
        } => commands::cmd_run(RunArgs {
            config,
            out,
            seed,
            jobs,
            quiet: cli.quiet,
        }),
        Command::Schedule {
            initial,
            changes,
            delta,
            low,
            high,
            seed,
            out,
        } => commands::cmd_schedule(ScheduleArgs {
            initial,
            changes,
            delta,
            low,
            high,
            seed,
            out,
        }),
        Command::Oracle { query } => {
            let (config, query) = match query {
                OracleCommand::Opt { config, budget } => (config, OracleQuery::Opt { budget }),
                OracleCommand::Ic { config, seeds } => (config, OracleQuery::Ic { seeds }),
                OracleCommand::Alpha { config } => (config, OracleQuery::Alpha),
                OracleCommand::Cost { config, budget } => (config, OracleQuery::Cost { budget }),
            };
            commands::cmd_oracle(&config, query).map(|lines| {
                for l in lines {
                    println!("{l}");
                }
            })
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bpodc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
