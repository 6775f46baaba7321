//! Std companion of `bilevel-core`: instance files, experiment configs,
//! seeded multi-trial campaigns, summary statistics, CSV output and oracle
//! verification. The `bilevel` binary exposes all of it on the command line.

pub mod config;
pub mod error;
pub mod experiment;
pub mod format;
pub mod stats;
pub mod verify;

pub use config::{Algorithm, ExperimentConfig, Family};
pub use error::HarnessError;
pub use experiment::{run_experiment, run_single, run_trials, GroupResult, TrialRecord};
pub use format::{parse_instance, write_instance};
pub use stats::{summarize, write_records_csv, write_summary_csv, SummaryStats};
pub use verify::{verify_oracles, VerifyReport};
