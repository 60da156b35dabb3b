//! Human-readable summary of a results directory.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::record::{read_csv, read_summary};
use crate::CliError;

type Summary = BTreeMap<String, String>;

struct Record {
    id: String,
    summary: Summary,
}

fn get<'a>(s: &'a Summary, key: &str) -> Result<&'a str, String> {
    s.get(key).map(String::as_str).ok_or_else(|| format!("missing `{key}`"))
}

fn num(s: &Summary, key: &str) -> Result<f64, String> {
    let v = get(s, key)?;
    v.parse().map_err(|_| format!("`{key}` is not a number: `{v}`"))
}

fn load(summary_path: &Path) -> Result<Record, String> {
    let summary = read_summary(summary_path)?;
    let id = get(&summary, "run_id")?.to_string();
    get(&summary, "experiment_id")?;
    let csv_path = summary_path.with_extension("csv");
    if !csv_path.exists() {
        return Err(format!("missing {}", csv_path.display()));
    }
    read_csv(&csv_path).map_err(|e| format!("{}: {e}", csv_path.display()))?;
    // render once to surface missing keys as corruption
    let rec = Record { id, summary };
    render(&[&rec], get(&rec.summary, "experiment_id")?)?;
    Ok(rec)
}

/// Summarize every record in `dir`. Unreadable records are listed at the
/// end; they never hide the readable ones.
pub fn report(dir: &Path) -> Result<String, CliError> {
    let entries = fs::read_dir(dir)
        .map_err(|e| CliError::Validation(format!("cannot read results directory {}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries.filter_map(|e| e.ok().map(|e| e.path())).collect();
    paths.sort();

    let mut records: Vec<Record> = Vec::new();
    let mut broken: Vec<(PathBuf, String)> = Vec::new();
    for path in &paths {
        match path.extension().and_then(|e| e.to_str()) {
            Some("summary") => match load(path) {
                Ok(r) => records.push(r),
                Err(e) => broken.push((path.clone(), e)),
            },
            Some("csv") if !path.with_extension("summary").exists() => {
                broken.push((path.clone(), "no matching .summary file".into()));
            }
            _ => {}
        }
    }

    let mut out = String::new();
    if records.is_empty() && broken.is_empty() {
        out.push_str(&format!("no records in {}\n", dir.display()));
        return Ok(out);
    }
    let mut by_kind: BTreeMap<String, Vec<&Record>> = BTreeMap::new();
    for r in &records {
        by_kind.entry(r.summary["experiment_id"].clone()).or_default().push(r);
    }
    for (kind, recs) in &by_kind {
        let _ = writeln!(out, "== {kind} ({} record{}) ==", recs.len(), if recs.len() == 1 { "" } else { "s" });
        match render(recs, kind) {
            Ok(text) => out.push_str(&text),
            Err(e) => {
                let _ = writeln!(out, "  (cannot summarize: {e})");
            }
        }
        out.push('\n');
    }
    if !broken.is_empty() {
        let _ = writeln!(out, "== unreadable records ({}) ==", broken.len());
        for (p, e) in &broken {
            let _ = writeln!(out, "  {}: {e}", p.display());
        }
    }
    Ok(out)
}

fn render(recs: &[&Record], kind: &str) -> Result<String, String> {
    let mut out = String::new();
    match kind {
        "greedy-ratio" | "density" => {
            let _ = writeln!(
                out,
                "  {:<34} {:<24} {:>5} {:>8} {:>6} {:>9} {:>9} {:>9} {:>7}",
                "run", "algorithm", "d", "n", "trials", "mean", "stderr", "2ln(d)/d", "ratio"
            );
            for r in recs {
                let s = &r.summary;
                let _ = writeln!(
                    out,
                    "  {:<34} {:<24} {:>5} {:>8} {:>6} {:>9.6} {:>9.6} {:>9.6} {:>7.4}",
                    r.id,
                    get(s, "algorithm")?,
                    get(s, "d")?,
                    get(s, "n")?,
                    get(s, "trials")?,
                    num(s, "mean")?,
                    num(s, "stderr")?,
                    num(s, "benchmark")?,
                    num(s, "ratio")?
                );
            }
        }
        "local-vs-greedy" => {
            for r in recs {
                let s = &r.summary;
                let _ = writeln!(
                    out,
                    "  {} (d={}, n={}, trials={}, R<={}, 2ln(d)/d={:.6})",
                    r.id,
                    get(s, "d")?,
                    get(s, "n")?,
                    get(s, "trials")?,
                    get(s, "max_depth")?,
                    num(s, "benchmark")?
                );
                let rows = num(s, "rows")? as usize;
                let best = s.get("best_local").and_then(|v| v.parse::<usize>().ok());
                for i in 0..rows {
                    let mark = if Some(i) == best { "  <- best local" } else { "" };
                    let _ = writeln!(
                        out,
                        "    {:<40} {:>9.6} ± {:.6}{mark}",
                        get(s, &format!("row.{i}.name"))?,
                        num(s, &format!("row.{i}.mean"))?,
                        num(s, &format!("row.{i}.stderr"))?
                    );
                }
                if let (Some(b), Some(dg)) = (best, s.get("degree_greedy").and_then(|v| v.parse::<usize>().ok())) {
                    let (mb, sb) = (num(s, &format!("row.{b}.mean"))?, num(s, &format!("row.{b}.stderr"))?);
                    let (md, sd) = (num(s, &format!("row.{dg}.mean"))?, num(s, &format!("row.{dg}.stderr"))?);
                    let se = (sb * sb + sd * sd).sqrt();
                    let verdict = if mb <= md + 3.0 * se { "yes" } else { "no" };
                    let _ = writeln!(out, "    best local <= degree-greedy (3 SE): {verdict}");
                }
            }
        }
        "overlap-probe" | "ogp-scan" => {
            let _ = writeln!(
                out,
                "  {:<34} {:<20} {:>6} {:<18} {:<18} {:>9} {:>8} {:>9}  gap (nu1, nu2)",
                "run", "instance", "theta", "sampler", "mode", "threshold", "retained", "pairs"
            );
            for r in recs {
                let s = &r.summary;
                let prefixes: Vec<String> = if kind == "ogp-scan" {
                    (0..num(s, "thetas")? as usize).map(|i| format!("theta.{i}.")).collect()
                } else {
                    vec![String::new()]
                };
                for p in prefixes {
                    let key = |k: &str| format!("{p}{k}");
                    let gap = if get(s, &key("insufficient_yield"))? == "true" {
                        "insufficient yield".to_string()
                    } else if let (Some(a), Some(b)) = (s.get(&key("gap_nu1")), s.get(&key("gap_nu2"))) {
                        format!("({a}, {b})")
                    } else {
                        "none".to_string()
                    };
                    let _ = writeln!(
                        out,
                        "  {:<34} {:<20} {:>6} {:<18} {:<18} {:>9} {:>8} {:>9}  {gap}",
                        r.id,
                        get(s, &key("instance"))?,
                        get(s, &key("theta"))?,
                        get(s, &key("sampler"))?,
                        get(s, &key("mode"))?,
                        get(s, &key("threshold"))?,
                        get(s, &key("retained"))?,
                        get(s, &key("samples"))?
                    );
                }
            }
        }
        "locality" => {
            let _ = writeln!(
                out,
                "  {:<34} {:<28} {:>5} {:>6} {:>6} {:>7}  result",
                "run", "rule", "R", "radius", "trials", "changes"
            );
            for r in recs {
                let s = &r.summary;
                let verdict = if get(s, "passed")? == "true" { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "  {:<34} {:<28} {:>5} {:>6} {:>6} {:>7}  {verdict}",
                    r.id,
                    get(s, "rule")?,
                    get(s, "depth")?,
                    get(s, "radius")?,
                    get(s, "trials")?,
                    get(s, "changes")?
                );
            }
        }
        "maxcut-scaling" => {
            for r in recs {
                let s = &r.summary;
                let _ = writeln!(
                    out,
                    "  {} (K={}, n={}, {}): cut/n - d/(2K) = {:.5} (± {:.5}) + {:.5} (± {:.5}) sqrt(d)",
                    r.id,
                    get(s, "k")?,
                    get(s, "n")?,
                    get(s, "algorithm")?,
                    num(s, "intercept")?,
                    num(s, "intercept_se")?,
                    num(s, "gamma")?,
                    num(s, "gamma_se")?
                );
                for i in 0..num(s, "points")? as usize {
                    let _ = writeln!(
                        out,
                        "    d={:<6} cut/n={:.6} ± {:.6}  residual {:+.6}",
                        get(s, &format!("point.{i}.d"))?,
                        num(s, &format!("point.{i}.mean"))?,
                        num(s, &format!("point.{i}.stderr"))?,
                        num(s, &format!("point.{i}.residual"))?
                    );
                }
            }
        }
        other => return Err(format!("unknown experiment_id `{other}`")),
    }
    Ok(out)
}
