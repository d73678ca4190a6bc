//! Experiment orchestration: configs, metrics, bound curves, robustness tables.

pub mod bounds;
pub mod config;
pub mod metrics;
pub mod robustness;
pub mod runner;

pub use bounds::{bound_constants, BoundConstants};
pub use config::ExperimentConfig;
pub use robustness::{robustness_study, RobustnessResult, RobustnessRow};
pub use runner::{run_experiment, write_outputs, ExperimentResult, OutputFormat, SummaryRow, TraceRecord};
