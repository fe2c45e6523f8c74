//! Scenario configs, runs, tables, verdicts and the command line.

pub mod cli;
pub mod config;
pub mod scenarios;
pub mod table;
pub mod verdict;

pub use config::{ExperimentConfig, SCENARIOS};
pub use scenarios::{compute_scenario, run_scenario, ExperimentResult, Verdict};
pub use table::Table;
pub use verdict::{kreiss_verdict, power_verdict, Growth, KreissCall, KreissVerdict, PowerVerdict};
