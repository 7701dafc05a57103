//! Experiment configuration, sweep engine and CSV output.

pub mod config;
pub mod csv;
pub mod groups;
pub mod sweep;

pub use config::{ClassifierSpec, ExperimentConfig, TestId, TupleLengths};
pub use groups::ReductionGroup;
pub use sweep::{
    run_config, run_experiment, run_test1, run_test2, run_test3, SweepPoint, SweepResult,
};
