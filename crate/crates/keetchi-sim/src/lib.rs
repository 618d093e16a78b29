//! Deterministic discrete-event network simulator and scenario runner for
//! the keetchi engine: mobility, beacon-driven neighbor discovery, link
//! delay/loss, application traffic models and statistics output.

pub mod apps;
pub mod config;
pub mod error;
pub mod netsim;
pub mod runner;
pub mod stats;

pub use config::{load_config, ScenarioConfig};
pub use error::SimError;
pub use runner::{build_sim, run_scenario};
pub use stats::{write_stats, StatsLedger};
