//! Experiment driver for the helicoid-lab verification suites.
//!
//! A run resolves a parameter map (every key defaulted and echoed), executes
//! one or all suites, and writes `results.json`, one CSV per table and a
//! `manifest.json` carrying versions, timings and a timestamp.

// `!(x > 0.0)` is the intended way to reject NaN along with bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod report;
pub mod run;
pub mod suites;

pub use config::{ConfigError, ExperimentConfig, Params, DEFAULT_OUT_DIR, OUT_DIR_ENV, PARAMS};
pub use report::{Check, Relation, SuiteReport, Table};
pub use run::{execute, results_json, run, write_artifacts, RunError, RunOutcome};
pub use suites::{run_suite, Subcommand};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/experiments.md")]
struct Experiments;
