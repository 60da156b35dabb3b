//! MAXCUT on K-uniform random hypergraphs: per-degree cut densities and
//! the fit `cut/n - d/(2K) = a + gamma * sqrt(d)`.
//!
//! The fitted slope is an estimate for the algorithm that was run; it is
//! not an estimate of the optimal constant.

use rayon::prelude::*;

use crate::algorithms::{local_flip_cut, random_spins};
use crate::error::{Error, Result};
use crate::experiments::stats::mean_stderr;
use crate::generators::gen_hypergraph;
use crate::problems::hyper_maxcut_cost;
use crate::rng::SeededRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutAlgorithm {
    /// Uniformly random signs.
    RandomAssignment,
    /// Random signs improved by single-flip local search.
    LocalFlip { max_rounds: usize },
}

impl CutAlgorithm {
    pub fn id(self) -> &'static str {
        match self {
            CutAlgorithm::RandomAssignment => "random",
            CutAlgorithm::LocalFlip { .. } => "local-flip",
        }
    }
}

pub const DEFAULT_FLIP_ROUNDS: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingPoint {
    pub d: f64,
    pub n: usize,
    pub cuts: Vec<usize>,
    pub edges: Vec<usize>,
    /// `cut / n` per trial.
    pub per_trial: Vec<f64>,
    pub mean: f64,
    pub stderr: f64,
}

impl ScalingPoint {
    pub fn from_trials(d: f64, n: usize, cuts: Vec<usize>, edges: Vec<usize>) -> Self {
        let per_trial: Vec<f64> = cuts.iter().map(|&c| c as f64 / n as f64).collect();
        let (mean, stderr) = mean_stderr(&per_trial);
        Self {
            d,
            n,
            cuts,
            edges,
            per_trial,
            mean,
            stderr,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingFitResult {
    pub k: usize,
    pub points: Vec<ScalingPoint>,
    pub intercept: f64,
    pub gamma: f64,
    /// Standard errors propagated from the per-point standard errors.
    pub intercept_se: f64,
    pub gamma_se: f64,
    /// Observed minus fitted excess `cut/n - d/(2K)`, per point.
    pub residuals: Vec<f64>,
}

/// Unweighted least squares of `mean - d/(2K)` on `sqrt(d)`.
pub fn fit_sqrt_scaling(k: usize, points: Vec<ScalingPoint>) -> Result<ScalingFitResult> {
    let mut distinct: Vec<f64> = points.iter().map(|p| p.d).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::Fit(distinct.len()));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.d.sqrt()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.mean - p.d / (2.0 * k as f64)).collect();
    let m = xs.len() as f64;
    let x_bar = xs.iter().sum::<f64>() / m;
    let y_bar = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - x_bar) * (x - x_bar)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_bar) * (y - y_bar)).sum();
    let gamma = sxy / sxx;
    let intercept = y_bar - gamma * x_bar;
    // both estimates are linear in the y_i
    let slope_w: Vec<f64> = xs.iter().map(|x| (x - x_bar) / sxx).collect();
    let gamma_se = slope_w
        .iter()
        .zip(&points)
        .map(|(w, p)| (w * p.stderr).powi(2))
        .sum::<f64>()
        .sqrt();
    let intercept_se = slope_w
        .iter()
        .zip(&points)
        .map(|(w, p)| ((1.0 / m - x_bar * w) * p.stderr).powi(2))
        .sum::<f64>()
        .sqrt();
    let residuals = xs.iter().zip(&ys).map(|(x, y)| y - (intercept + gamma * x)).collect();
    Ok(ScalingFitResult {
        k,
        points,
        intercept,
        gamma,
        intercept_se,
        gamma_se,
        residuals,
    })
}

/// Cut densities at one degree. Trial `t` uses stream `stream_base + t`.
pub fn maxcut_point(
    k: usize,
    d: f64,
    n: usize,
    trials: usize,
    algorithm: CutAlgorithm,
    master_seed: u64,
    stream_base: u64,
) -> Result<ScalingPoint> {
    let runs = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = SeededRng::for_trial(master_seed, stream_base + t as u64);
            let h = gen_hypergraph(n, d, k, &mut rng)?;
            let start = random_spins(n, &mut rng);
            let cut = match algorithm {
                CutAlgorithm::RandomAssignment => hyper_maxcut_cost(&h, &start)?,
                CutAlgorithm::LocalFlip { max_rounds } => local_flip_cut(&h, &start, max_rounds, &mut rng)?.cut,
            };
            Ok((cut, h.m()))
        })
        .collect::<Result<Vec<(usize, usize)>>>()?;
    let (cuts, edges) = runs.into_iter().unzip();
    Ok(ScalingPoint::from_trials(d, n, cuts, edges))
}

/// Run `algorithm` on `G(n, d; K)` for each degree and fit the sqrt(d) law.
pub fn maxcut_scaling_experiment(
    k: usize,
    degrees: &[f64],
    n: usize,
    trials: usize,
    algorithm: CutAlgorithm,
    master_seed: u64,
) -> Result<ScalingFitResult> {
    let mut distinct = degrees.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::Fit(distinct.len()));
    }
    if trials == 0 {
        return Err(Error::range("trials", "need at least one trial"));
    }
    let points = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| maxcut_point(k, d, n, trials, algorithm, master_seed, (i * trials) as u64))
        .collect::<Result<Vec<_>>>()?;
    fit_sqrt_scaling(k, points)
}
