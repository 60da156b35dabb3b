//! Library side of the `ogp` command-line tool: config parsing,
//! experiment dispatch, result records, reports and charts.

pub mod config;
pub mod gen;
pub mod record;
pub mod report;
pub mod run;
pub mod svg;

use std::fmt;
use std::path::Path;
use std::time::Instant;

use chrono::Utc;

pub use config::{ExperimentConfig, Kind, Params};
pub use record::RunFiles;

/// CLI failure, split by exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Bad input detected before any computation (exit 2).
    Validation(String),
    /// Failure while computing or writing results (exit 3).
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Runtime(m) => write!(f, "runtime error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Build a rayon pool with `workers` threads (all cores when `None`).
pub fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    if workers == Some(0) {
        return Err(CliError::Validation("--workers must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Runtime(format!("cannot start worker pool: {e}")))
}

/// Run a validated config on `workers` threads and write its records.
pub fn run_experiment(cfg: &ExperimentConfig, out_dir: &Path, workers: Option<usize>) -> Result<RunFiles, CliError> {
    cfg.validate()?;
    let pool = pool(workers)?;
    let started = Utc::now();
    let clock = Instant::now();
    let output = pool.install(|| run::execute(cfg))?;
    record::write_run(out_dir, cfg, &output, started, clock.elapsed())
}

/// The rule library as printed by `ogp rules`.
pub fn rules_listing() -> String {
    use ogp_core::algorithms::RULES;
    let mut s = format!("{:<16} {:<14} {:<26} description\n", "rule", "coefficients", "parameters");
    for r in RULES {
        s.push_str(&format!("{:<16} {:<14} {:<26} {}\n", r.id, r.arity.to_string(), r.params, r.summary));
    }
    s
}
