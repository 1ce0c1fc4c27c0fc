//! Scenario configuration, report emission and sweeps for the `qcausal` tool.

pub mod config;
pub mod output;
pub mod run;
pub mod scenario;
pub mod verify;

pub use config::{load_config, ConfigError, ScenarioConfig, ScenarioKind};
pub use run::{execute, sweep, RunError, RunOutcome, Scale, SweepRow, SweepSpec};
pub use scenario::{build_scenario, Scenario};
