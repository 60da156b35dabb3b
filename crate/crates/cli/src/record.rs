//! On-disk result records.
//!
//! A run with id `<kind>-s<seed>-<hash>` writes, into the output
//! directory:
//!
//! - `<id>.csv`: one row per trial metric, with the fixed header
//!   [`CSV_HEADER`];
//! - `<id>.summary`: `key=value` summary statistics plus run metadata;
//! - `<id>.config`: the resolved config, replayable with `ogp run`;
//! - `<id>.svg` (or `<id>.<suffix>.svg`): charts, when the experiment has
//!   any.
//!
//! The hash covers the echoed config, so the id depends only on what was
//! run. Values are written in shortest round-trip form.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use chrono::{DateTime, SecondsFormat, Utc};

use crate::config::ExperimentConfig;
use crate::run::RunOutput;
use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;
pub const CSV_HEADER: [&str; 8] = [
    "format_version",
    "experiment_id",
    "params",
    "seed",
    "trial",
    "metric",
    "value",
    "timestamp",
];
pub const SOFTWARE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunFiles {
    pub id: String,
    pub csv: PathBuf,
    pub summary: PathBuf,
    pub config: PathBuf,
    pub charts: Vec<PathBuf>,
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn run_id(cfg: &ExperimentConfig) -> String {
    let hash = fnv1a(cfg.echo().as_bytes());
    format!("{}-s{}-{:08x}", cfg.kind().id(), cfg.seed, hash >> 32)
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Runtime(format!("cannot write {}: {e}", path.display()))
}

/// Write the CSV, summary, config echo and charts of one run.
pub fn write_run(
    dir: &Path,
    cfg: &ExperimentConfig,
    output: &RunOutput,
    started: DateTime<Utc>,
    duration: Duration,
) -> Result<RunFiles, CliError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let id = run_id(cfg);
    let timestamp = started.to_rfc3339_opts(SecondsFormat::Secs, true);
    let params = cfg.params_string();
    let kind = cfg.kind().id();

    let csv_path = dir.join(format!("{id}.csv"));
    let mut w = csv::Writer::from_path(&csv_path).map_err(|e| CliError::Runtime(format!("{}: {e}", csv_path.display())))?;
    let csv_err = |e: csv::Error| CliError::Runtime(format!("cannot write {}: {e}", csv_path.display()));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    let version = FORMAT_VERSION.to_string();
    let seed = cfg.seed.to_string();
    for row in &output.rows {
        let trial = row.trial.to_string();
        let value = row.value.to_string();
        w.write_record([
            version.as_str(),
            kind,
            params.as_str(),
            seed.as_str(),
            trial.as_str(),
            row.metric.as_str(),
            value.as_str(),
            timestamp.as_str(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| io_err(&csv_path, e))?;

    let mut summary = format!(
        "format_version={FORMAT_VERSION}\nexperiment_id={kind}\nrun_id={id}\nsoftware_version={SOFTWARE_VERSION}\n\
         seed={}\nparams={params}\ntimestamp={timestamp}\nduration_ms={}\n",
        cfg.seed,
        duration.as_millis()
    );
    for (k, v) in &output.summary {
        summary.push_str(&format!("{k}={v}\n"));
    }
    let summary_path = dir.join(format!("{id}.summary"));
    fs::write(&summary_path, summary).map_err(|e| io_err(&summary_path, e))?;

    let config_path = dir.join(format!("{id}.config"));
    fs::write(&config_path, cfg.echo()).map_err(|e| io_err(&config_path, e))?;

    let mut charts = Vec::new();
    for (suffix, doc) in &output.charts {
        let path = if suffix.is_empty() {
            dir.join(format!("{id}.svg"))
        } else {
            dir.join(format!("{id}.{suffix}.svg"))
        };
        fs::write(&path, doc).map_err(|e| io_err(&path, e))?;
        charts.push(path);
    }
    Ok(RunFiles {
        id,
        csv: csv_path,
        summary: summary_path,
        config: config_path,
        charts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsvRow {
    pub format_version: String,
    pub experiment_id: String,
    pub params: String,
    pub seed: String,
    pub trial: String,
    pub metric: String,
    pub value: String,
    pub timestamp: String,
}

/// Read a result CSV, checking the header and column count.
pub fn read_csv(path: &Path) -> Result<Vec<CsvRow>, String> {
    let mut r = csv::Reader::from_path(path).map_err(|e| e.to_string())?;
    let header = r.headers().map_err(|e| e.to_string())?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(format!("unexpected CSV header `{}`", header.iter().collect::<Vec<_>>().join(",")));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| format!("row {}: {e}", i + 2))?;
        if rec[6].parse::<f64>().is_err() {
            return Err(format!("row {}: value `{}` is not a number", i + 2, &rec[6]));
        }
        rows.push(CsvRow {
            format_version: rec[0].to_string(),
            experiment_id: rec[1].to_string(),
            params: rec[2].to_string(),
            seed: rec[3].to_string(),
            trial: rec[4].to_string(),
            metric: rec[5].to_string(),
            value: rec[6].to_string(),
            timestamp: rec[7].to_string(),
        });
    }
    Ok(rows)
}

/// Parse a `.summary` file into its key/value pairs.
pub fn read_summary(path: &Path) -> Result<BTreeMap<String, String>, String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
        map.insert(k.to_string(), v.to_string());
    }
    match map.get("format_version").map(String::as_str) {
        Some(v) if v == FORMAT_VERSION.to_string() => Ok(map),
        Some(v) => Err(format!("unsupported format_version {v}")),
        None => Err("missing format_version".into()),
    }
}
