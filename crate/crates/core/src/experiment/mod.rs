//! Experiment configuration, batch suites and report emission.
//!
//! Each suite writes one or more CSV files (first line `# schema=1`) into the
//! output directory; the inequality suite also writes one SVG scatter of
//! ratio against `p` per inequality. Output depends only on the
//! configuration and seed.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{ExperimentConfig, LatticeSource, WeightSpec};
pub use suites::{run, RunOutcome, Suite, SuiteOutcome};
