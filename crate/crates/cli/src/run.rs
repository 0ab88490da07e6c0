use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ExperimentConfig, Params};
use crate::report::{Check, SuiteReport};
use crate::suites::{run_suite, Subcommand};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot serialize {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub reports: Vec<SuiteReport>,
    /// Wall time per suite in seconds; recorded in the manifest only.
    pub timings: Vec<(String, f64)>,
    pub files: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn failing(&self) -> Vec<&Check> {
        self.reports.iter().flat_map(|r| r.failing()).collect()
    }

    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed())
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.reports.iter().flat_map(|r| &r.checks)
    }
}

#[derive(Serialize)]
struct Results<'a> {
    subcommand: &'a str,
    config: &'a Params,
    pass: bool,
    failing: Vec<&'a str>,
    suites: &'a [SuiteReport],
}

#[derive(Serialize)]
struct Versions {
    #[serde(rename = "helicoid-lab")]
    core: &'static str,
    #[serde(rename = "helicoid-lab-cli")]
    cli: &'static str,
}

#[derive(Serialize)]
struct Manifest<'a> {
    subcommand: &'a str,
    config: &'a Params,
    versions: Versions,
    timestamp: String,
    elapsed_seconds: &'a [(String, f64)],
    files: Vec<String>,
}

/// Runs the suites of a subcommand, in parallel, without touching the disk.
pub fn execute(subcommand: Subcommand, params: &Params) -> RunOutcome {
    let timed: Vec<(SuiteReport, f64)> = subcommand
        .suites()
        .into_par_iter()
        .map(|s| {
            let start = Instant::now();
            let r = run_suite(s, params);
            (r, start.elapsed().as_secs_f64())
        })
        .collect();
    let timings = timed.iter().map(|(r, t)| (r.suite.clone(), *t)).collect();
    RunOutcome { reports: timed.into_iter().map(|(r, _)| r).collect(), timings, files: Vec::new() }
}

fn write(path: &Path, contents: &str) -> Result<(), RunError> {
    fs::write(path, contents).map_err(|source| RunError::Io { path: path.to_path_buf(), source })
}

/// results.json is a pure function of the configuration; anything that varies
/// between runs goes to manifest.json.
pub fn results_json(subcommand: Subcommand, params: &Params, outcome: &RunOutcome) -> Result<String, RunError> {
    let results = Results {
        subcommand: subcommand.name(),
        config: params,
        pass: outcome.passed(),
        failing: outcome.failing().iter().map(|c| c.name.as_str()).collect(),
        suites: &outcome.reports,
    };
    Ok(serde_json::to_string_pretty(&results)? + "\n")
}

fn timestamp() -> String {
    time::OffsetDateTime::now_utc()
        .format(&time::format_description::well_known::Rfc3339)
        .unwrap_or_else(|_| "unknown".into())
}

pub fn write_artifacts(config: &ExperimentConfig, outcome: &mut RunOutcome) -> Result<(), RunError> {
    let dir = &config.out_dir;
    fs::create_dir_all(dir).map_err(|source| RunError::Io { path: dir.clone(), source })?;
    let mut files = Vec::new();
    for table in outcome.reports.iter().flat_map(|r| &r.tables) {
        let path = dir.join(format!("{}.csv", table.name));
        write(&path, &table.to_csv())?;
        files.push(path);
    }
    let path = dir.join("results.json");
    write(&path, &results_json(config.subcommand, &config.params, outcome)?)?;
    files.push(path);
    let manifest = Manifest {
        subcommand: config.subcommand.name(),
        config: &config.params,
        versions: Versions { core: helicoid_lab::VERSION, cli: env!("CARGO_PKG_VERSION") },
        timestamp: timestamp(),
        elapsed_seconds: &outcome.timings,
        files: files.iter().filter_map(|p| p.file_name()).map(|n| n.to_string_lossy().into_owned()).collect(),
    };
    let path = dir.join("manifest.json");
    write(&path, &(serde_json::to_string_pretty(&manifest)? + "\n"))?;
    files.push(path);
    outcome.files = files;
    Ok(())
}

/// Runs a configured experiment and writes its artifacts.
pub fn run(config: &ExperimentConfig) -> Result<RunOutcome, RunError> {
    let mut outcome = execute(config.subcommand, &config.params);
    write_artifacts(config, &mut outcome)?;
    Ok(outcome)
}
