use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use keetchi_sim::config::{load_config, MobilityConfig, TraceMobility};
use keetchi_sim::error::SimError;
use keetchi_sim::runner::run_scenario;
use keetchi_sim::stats::write_stats;

#[derive(Parser)]
#[command(name = "keetchi-sim", about = "Opportunistic dissemination scenario runner", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and print the summary metrics.
    Run {
        /// Scenario file (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Write summary.csv, events.csv and deliveries.csv here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replace the configured mobility with this contact trace.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check a scenario file and exit.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), SimError> {
    match cli.command {
        Command::Run {
            config,
            seed,
            out,
            trace,
        } => {
            let mut cfg = load_config(&config)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(trace) = trace {
                cfg.mobility = MobilityConfig::Trace(TraceMobility {
                    path: trace.display().to_string(),
                });
            }
            let ledger = run_scenario(&cfg)?;
            let m = &ledger.metrics;
            println!("interested_delivery_ratio = {}", m.interested_delivery_ratio);
            println!("mean_delivery_delay_s     = {}", m.mean_delivery_delay);
            println!("data_sent_total           = {}", m.data_sent_total);
            println!("feedback_sent_total       = {}", m.feedback_sent_total);
            println!("duplicate_ratio           = {}", m.duplicate_ratio);
            println!("mean_cache_occupancy      = {}", m.mean_cache_occupancy);
            println!("eviction_count            = {}", m.eviction_count);
            if let Some(dir) = out {
                write_stats(&ledger, &dir)?;
                println!("wrote {}", dir.display());
            }
            Ok(())
        }
        Command::Validate { config } => {
            load_config(&config)?;
            println!("ok");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
