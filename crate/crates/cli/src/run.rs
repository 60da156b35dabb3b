//! Dispatch of a validated config to the experiment functions.

use ogp_core::algorithms::Depth;
use ogp_core::experiments::{
    density_experiment, greedy_ratio_experiment, local_vs_greedy_experiment, locality_perturbation_test,
    maxcut_scaling_experiment, ogp_scan, overlap_probe, DensityEstimate, OverlapHistogram,
    ThresholdMode,
};
use ogp_core::SeededRng;

use crate::config::{ExperimentConfig, Params};
use crate::svg;
use crate::CliError;

/// One CSV data row, before the run-level columns are attached.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricRow {
    pub trial: usize,
    pub metric: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct RunOutput {
    pub rows: Vec<MetricRow>,
    /// Experiment-specific summary entries, in output order.
    pub summary: Vec<(String, String)>,
    /// `(file suffix, svg document)`.
    pub charts: Vec<(String, String)>,
}

impl RunOutput {
    fn row(&mut self, trial: usize, metric: impl Into<String>, value: f64) {
        self.rows.push(MetricRow {
            trial,
            metric: metric.into(),
            value,
        });
    }

    fn put(&mut self, key: impl Into<String>, value: impl ToString) {
        self.summary.push((key.into(), value.to_string()));
    }
}

fn runtime(e: ogp_core::Error) -> CliError {
    CliError::Runtime(e.to_string())
}

/// Run the experiment described by `cfg` on the current rayon pool.
pub fn execute(cfg: &ExperimentConfig) -> Result<RunOutput, CliError> {
    let mut out = RunOutput::default();
    match &cfg.params {
        Params::GreedyRatio { n, d, trials } => {
            let est = greedy_ratio_experiment(*d, *n, *trials, cfg.seed).map_err(runtime)?;
            density_output(&mut out, "greedy", &est);
        }
        Params::Density {
            n,
            d,
            trials,
            algorithm,
        } => {
            let est = density_experiment(algorithm, *d, *n, *trials, cfg.seed).map_err(runtime)?;
            density_output(&mut out, &algorithm.to_string(), &est);
        }
        Params::LocalVsGreedy {
            n,
            d,
            trials,
            max_depth,
            rules,
        } => {
            let table = local_vs_greedy_experiment(*d, *n, *max_depth, rules, *trials, cfg.seed).map_err(runtime)?;
            out.put("d", table.d);
            out.put("n", table.n);
            out.put("trials", table.trials);
            out.put("max_depth", table.max_depth);
            out.put("benchmark", table.benchmark);
            out.put("rows", table.rows.len());
            for (i, row) in table.rows.iter().enumerate() {
                let name = match row.depth {
                    Some(r) => format!("{}@R={r}", row.algorithm),
                    None => row.algorithm.clone(),
                };
                for (t, v) in row.per_trial.iter().enumerate() {
                    out.row(t, format!("density:{name}"), *v);
                }
                out.put(format!("row.{i}.name"), &name);
                out.put(format!("row.{i}.mean"), row.mean);
                out.put(format!("row.{i}.stderr"), row.stderr);
            }
            if let Some(best) = table.best_local {
                out.put("best_local", best);
                if let Some(dg) = table.rows.iter().position(|r| r.algorithm == "degree-greedy") {
                    out.put("degree_greedy", dg);
                }
            }
        }
        Params::OverlapProbe(probe) => {
            let hist = overlap_probe(probe, cfg.seed).map_err(runtime)?;
            histogram_output(&mut out, "", &hist);
            out.charts.push((String::new(), svg::histogram(&hist)));
        }
        Params::OgpScan { probe, thetas } => {
            let hists = ogp_scan(probe, thetas, cfg.seed).map_err(runtime)?;
            out.put("thetas", thetas.len());
            for (i, hist) in hists.iter().enumerate() {
                histogram_output(&mut out, &format!("theta.{i}."), hist);
                out.charts.push((format!("theta{i}"), svg::histogram(hist)));
            }
        }
        Params::Locality {
            instance,
            rule,
            depth,
            node,
            trials,
        } => {
            let mut rng = SeededRng::new(cfg.seed);
            let g = instance.generate(&mut rng.fork()).map_err(runtime)?;
            let built = rule.build().map_err(runtime)?;
            let report =
                locality_perturbation_test(&g, built.as_ref(), Depth(*depth), *node, *trials, &mut rng).map_err(runtime)?;
            out.row(0, "changes", report.changes as f64);
            out.row(0, "edge_edits", report.edge_edits as f64);
            out.put("rule", rule);
            out.put("depth", report.depth);
            out.put("radius", report.radius);
            out.put("node", report.node);
            out.put("trials", report.trials);
            out.put("changes", report.changes);
            out.put("passed", report.passed);
        }
        Params::MaxcutScaling {
            k,
            degrees,
            n,
            trials,
            algorithm,
        } => {
            let fit = maxcut_scaling_experiment(*k, degrees, *n, *trials, *algorithm, cfg.seed).map_err(runtime)?;
            out.put("k", fit.k);
            out.put("n", n);
            out.put("algorithm", algorithm.id());
            out.put("gamma", fit.gamma);
            out.put("gamma_se", fit.gamma_se);
            out.put("intercept", fit.intercept);
            out.put("intercept_se", fit.intercept_se);
            out.put("points", fit.points.len());
            for (i, p) in fit.points.iter().enumerate() {
                for t in 0..p.cuts.len() {
                    out.row(t, format!("cut@d={}", p.d), p.cuts[t] as f64);
                    out.row(t, format!("edges@d={}", p.d), p.edges[t] as f64);
                }
                out.put(format!("point.{i}.d"), p.d);
                out.put(format!("point.{i}.mean"), p.mean);
                out.put(format!("point.{i}.stderr"), p.stderr);
                out.put(format!("point.{i}.residual"), fit.residuals[i]);
            }
            out.charts.push((String::new(), svg::scaling(&fit)));
        }
    }
    Ok(out)
}

fn density_output(out: &mut RunOutput, algorithm: &str, est: &DensityEstimate) {
    for (t, v) in est.per_trial.iter().enumerate() {
        out.row(t, "density", *v);
    }
    out.put("algorithm", algorithm);
    out.put("d", est.d);
    out.put("n", est.n);
    out.put("trials", est.trials);
    out.put("mean", est.mean);
    out.put("stderr", est.stderr);
    out.put("benchmark", est.benchmark);
    out.put("ratio", est.ratio);
}

fn histogram_output(out: &mut RunOutput, prefix: &str, hist: &OverlapHistogram) {
    let p = &hist.provenance;
    let metric = if prefix.is_empty() { "bin_count".to_string() } else { format!("bin_count@theta={}", p.theta) };
    for (i, c) in hist.counts.iter().enumerate() {
        out.row(i, metric.clone(), *c as f64);
    }
    out.put(format!("{prefix}theta"), p.theta);
    out.put(format!("{prefix}instance"), &p.instance);
    out.put(format!("{prefix}sampler"), &p.sampler);
    match p.mode {
        ThresholdMode::OracleRelative { optimum } => {
            out.put(format!("{prefix}mode"), "oracle-relative");
            out.put(format!("{prefix}optimum"), optimum);
        }
        ThresholdMode::BenchmarkRelative { benchmark_density } => {
            out.put(format!("{prefix}mode"), "benchmark-relative");
            out.put(format!("{prefix}benchmark"), benchmark_density);
        }
    }
    out.put(format!("{prefix}threshold"), p.threshold);
    out.put(format!("{prefix}retained"), p.retained);
    out.put(format!("{prefix}census"), p.census);
    out.put(format!("{prefix}samples"), hist.samples);
    out.put(format!("{prefix}insufficient_yield"), hist.insufficient_yield);
    let edges: Vec<String> = hist.edges.iter().map(|e| e.to_string()).collect();
    out.put(format!("{prefix}bin_edges"), edges.join(","));
    match hist.gap {
        Some((a, b)) => {
            out.put(format!("{prefix}gap_nu1"), a);
            out.put(format!("{prefix}gap_nu2"), b);
        }
        None => out.put(format!("{prefix}gap"), "none"),
    }
}
