use std::fs::File;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, Subcommand};
use iotmab_cli::{oracle_report, render_gains, run_scenario, summarize_gains, Scenario};

/// Slotted-ALOHA IoT network simulator with bandit channel selection.
#[derive(Debug, Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every policy x smart-fraction x seed of a scenario and write CSVs.
    Run {
        scenario: PathBuf,
        /// Output directory, overriding the scenario's `output`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Number of seeds, overriding the scenario's `n_seeds`.
        #[arg(long)]
        seeds: Option<usize>,
        /// Worker threads (defaults to the number of CPUs).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print the optimal and greedy oracle allocations with their analytic
    /// success rates.
    Oracle { scenario: PathBuf },
    /// Print the gain of each policy over the random baseline.
    Gains { summary: PathBuf },
}

fn main() -> anyhow::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("IOTMAB_LOG", "info"))
        .init();
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            scenario,
            out,
            seeds,
            threads,
        } => {
            let mut s = Scenario::load(&scenario)?;
            if let Some(out) = out {
                s.output_path = out;
            }
            if let Some(seeds) = seeds {
                s.n_seeds = seeds;
            }
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(threads) = threads {
                pool = pool.num_threads(threads);
            }
            let pool = pool.build().context("building the thread pool")?;
            let outputs = pool.install(|| run_scenario(&s))?;
            println!("wrote {}", outputs.timeseries.display());
            println!("wrote {}", outputs.summary.display());
        }
        Command::Oracle { scenario } => {
            let s = Scenario::load(&scenario)?;
            print!("{}", oracle_report(&s)?);
        }
        Command::Gains { summary } => {
            let file =
                File::open(&summary).with_context(|| format!("opening {}", summary.display()))?;
            print!("{}", render_gains(&summarize_gains(file)?));
        }
    }
    Ok(())
}
