//! Seeded experiment runner: configuration, execution and reports.

pub mod config;
pub mod experiments;
pub mod output;
pub mod report;

pub use config::{ConfigError, ExperimentConfig, ExperimentId, RawConfig};
pub use experiments::run;
pub use output::{CsvTable, RunOutput};
pub use report::{Check, ComparisonReport, Row};

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const RUNTIME: i32 = 3;
}
