//! Overlap-gap probe: histograms of pairwise overlaps among θ-optimal
//! independent sets and the widest empty gap inside their support.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::experiments::instance::{Algorithm, InstanceSpec};
use crate::experiments::stats::is_benchmark_density;
use crate::graph::Graph;
use crate::oracle::{enumerate_theta_optimal_is, exact_max_is, theta_threshold, EXHAUSTIVE_CAP};
use crate::problems::IndependentSet;
use crate::rng::SeededRng;

/// Instances up to this size use oracle-relative θ thresholds and one
/// histogram bin per attainable overlap value `k / n`.
pub const SMALL_N: usize = 20;
pub const DEFAULT_BINS: usize = 50;
/// Gaps narrower than this many bins are not reported.
pub const MIN_GAP_BINS: usize = 2;

/// `|I_1 ∩ I_2| / n` for two sets of the same host graph.
pub fn pairwise_overlap(a: &IndependentSet, b: &IndependentSet) -> Result<f64> {
    if a.host() != b.host() || a.n() != b.n() {
        return Err(Error::HostMismatch);
    }
    if a.n() == 0 {
        return Ok(0.0);
    }
    Ok(intersection_size(a.members(), b.members()) as f64 / a.n() as f64)
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                k += 1;
                i += 1;
                j += 1;
            }
        }
    }
    k
}

/// Where probe solutions come from.
#[derive(Clone, Debug, PartialEq)]
pub enum Sampler {
    /// Repeated runs of an algorithm with fresh seeds.
    Algorithm(Algorithm),
    /// Every θ-optimal set of the instance, once each (small n only).
    Exact,
}

impl std::fmt::Display for Sampler {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sampler::Algorithm(a) => a.fmt(f),
            Sampler::Exact => f.write_str("exact"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeConfig {
    pub instance: InstanceSpec,
    pub theta: f64,
    pub sampler: Sampler,
    /// Sampler runs (ignored by the exact sampler).
    pub runs: usize,
    /// Pair budget; when it covers every pair the probe takes a census.
    pub pairs: usize,
    pub include_diagonal: bool,
    /// Bin count for large instances; small instances use lattice bins.
    pub bins: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThresholdMode {
    /// θ times the exact instance optimum.
    OracleRelative { optimum: usize },
    /// θ times `2 ln d / d * n`; the true optimum is unknown.
    BenchmarkRelative { benchmark_density: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub instance: String,
    pub theta: f64,
    pub sampler: String,
    pub threshold: usize,
    pub mode: ThresholdMode,
    pub runs: usize,
    pub retained: usize,
    pub census: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OverlapHistogram {
    /// `bins + 1` increasing edges covering `[0, 1]`.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub samples: u64,
    /// Set when bin `k` holds exactly the overlap `k / n`.
    pub lattice_n: Option<usize>,
    /// Widest empty interval strictly inside the support, as `(nu1, nu2)`.
    pub gap: Option<(f64, f64)>,
    pub insufficient_yield: bool,
    pub provenance: Provenance,
}

impl OverlapHistogram {
    fn new(edges: Vec<f64>, lattice_n: Option<usize>, provenance: Provenance) -> Self {
        let bins = edges.len() - 1;
        Self {
            edges,
            counts: vec![0; bins],
            samples: 0,
            lattice_n,
            gap: None,
            insufficient_yield: false,
            provenance,
        }
    }

    fn lattice(n: usize, provenance: Provenance) -> Self {
        let step = 1.0 / n.max(1) as f64;
        let mut edges = vec![0.0];
        edges.extend((0..n).map(|k| (k as f64 + 0.5) * step));
        edges.push(1.0);
        Self::new(edges, Some(n), provenance)
    }

    fn uniform(bins: usize, provenance: Provenance) -> Self {
        let edges = (0..=bins).map(|i| i as f64 / bins as f64).collect();
        Self::new(edges, None, provenance)
    }

    fn add_intersection(&mut self, k: usize, n: usize) {
        let bin = match self.lattice_n {
            Some(_) => k,
            None => {
                let x = if n == 0 { 0.0 } else { k as f64 / n as f64 };
                ((x * self.counts.len() as f64) as usize).min(self.counts.len() - 1)
            }
        };
        self.counts[bin] += 1;
        self.samples += 1;
    }

    /// Indices of nonempty bins; on lattice histograms these are the
    /// intersection sizes that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.counts.len()).filter(|&i| self.counts[i] > 0).collect()
    }

    /// Bin centers in `[0, 1]` with their counts.
    pub fn bars(&self) -> Vec<(f64, f64, u64)> {
        (0..self.counts.len())
            .map(|i| (self.edges[i], self.edges[i + 1], self.counts[i]))
            .collect()
    }

    fn detect_gap(&mut self) {
        self.gap = widest_gap(&self.counts, MIN_GAP_BINS).map(|(a, b)| (self.edges[a], self.edges[b]));
    }
}

/// Widest run of empty bins strictly between the first and last nonempty
/// bins, at least `min_bins` long, as `(first empty, one past last empty)`.
/// Ties go to the lower run.
pub fn widest_gap(counts: &[u64], min_bins: usize) -> Option<(usize, usize)> {
    let first = counts.iter().position(|&c| c > 0)?;
    let last = counts.iter().rposition(|&c| c > 0)?;
    let mut best: Option<(usize, usize)> = None;
    let mut i = first;
    while i < last {
        if counts[i] == 0 {
            let start = i;
            while counts[i] == 0 {
                i += 1;
            }
            let len = i - start;
            if len >= min_bins && best.is_none_or(|(a, b)| len > b - a) {
                best = Some((start, i));
            }
        } else {
            i += 1;
        }
    }
    best
}

/// Run the sampler, keep θ-optimal outputs and histogram their overlaps.
pub fn overlap_probe(cfg: &ProbeConfig, master_seed: u64) -> Result<OverlapHistogram> {
    if !(cfg.theta > 0.0 && cfg.theta <= 1.0) {
        return Err(Error::range("theta", format!("need 0 < theta <= 1, got {}", cfg.theta)));
    }
    cfg.instance.validate()?;
    let g = cfg.instance.generate(&mut SeededRng::for_trial(master_seed, 0))?;
    overlap_probe_on(&g, cfg, master_seed)
}

/// [`overlap_probe`] on a given graph; `cfg.instance` is only echoed.
pub fn overlap_probe_on(g: &Graph, cfg: &ProbeConfig, master_seed: u64) -> Result<OverlapHistogram> {
    let n = g.n();
    let small = n <= SMALL_N;
    let (threshold, mode) = if small {
        let optimum = exact_max_is(g)?.optimum;
        (theta_threshold(cfg.theta, optimum), ThresholdMode::OracleRelative { optimum })
    } else {
        let benchmark_density = is_benchmark_density(cfg.instance.d);
        let target = cfg.theta * benchmark_density * n as f64;
        let threshold = if target.is_finite() && target > 0.0 { (target - 1e-9).ceil() as usize } else { 0 };
        (threshold, ThresholdMode::BenchmarkRelative { benchmark_density })
    };

    let solutions: Vec<IndependentSet> = match &cfg.sampler {
        Sampler::Exact => {
            if n > EXHAUSTIVE_CAP {
                return Err(Error::CapExceeded { n, cap: EXHAUSTIVE_CAP });
            }
            if !small {
                return Err(Error::Precondition(format!(
                    "the exact sampler needs oracle-relative thresholds (n <= {SMALL_N})"
                )));
            }
            enumerate_theta_optimal_is(g, cfg.theta)?
        }
        Sampler::Algorithm(alg) => {
            let prepared = alg.prepare()?;
            let outputs: Vec<IndependentSet> = (0..cfg.runs)
                .into_par_iter()
                .map(|r| prepared.run(g, &mut SeededRng::for_trial(master_seed, r as u64 + 1)))
                .collect();
            outputs.into_iter().filter(|s| s.len() >= threshold).collect()
        }
    };

    let r = solutions.len() as u128;
    let population = if cfg.include_diagonal { r * (r + 1) / 2 } else { r * r.saturating_sub(1) / 2 };
    let census = cfg.pairs as u128 >= population;
    let provenance = Provenance {
        instance: cfg.instance.to_string(),
        theta: cfg.theta,
        sampler: cfg.sampler.to_string(),
        threshold,
        mode,
        runs: if cfg.sampler == Sampler::Exact { 0 } else { cfg.runs },
        retained: solutions.len(),
        census,
    };
    let mut hist = if small {
        OverlapHistogram::lattice(n, provenance)
    } else {
        OverlapHistogram::uniform(cfg.bins.max(1), provenance)
    };
    if population == 0 {
        hist.insufficient_yield = true;
        return Ok(hist);
    }

    if census {
        for i in 0..solutions.len() {
            let start = if cfg.include_diagonal { i } else { i + 1 };
            for b in &solutions[start..] {
                hist.add_intersection(intersection_size(solutions[i].members(), b.members()), n);
            }
        }
    } else {
        let mut rng = SeededRng::for_trial(master_seed, cfg.runs as u64 + 1);
        let len = solutions.len();
        let mut drawn = 0;
        while drawn < cfg.pairs {
            let (i, j) = (rng.random_range(0..len), rng.random_range(0..len));
            // unordered pairs uniformly: off-diagonal pairs are drawn twice as often
            let keep = if i == j { cfg.include_diagonal } else { rng.random::<bool>() || !cfg.include_diagonal };
            if !keep {
                continue;
            }
            let (a, b) = (&solutions[i.min(j)], &solutions[i.max(j)]);
            hist.add_intersection(intersection_size(a.members(), b.members()), n);
            drawn += 1;
        }
    }
    hist.detect_gap();
    Ok(hist)
}

/// Overlap probe at each θ of a grid, on one shared instance.
pub fn ogp_scan(cfg: &ProbeConfig, thetas: &[f64], master_seed: u64) -> Result<Vec<OverlapHistogram>> {
    cfg.instance.validate()?;
    let g = cfg.instance.generate(&mut SeededRng::for_trial(master_seed, 0))?;
    thetas
        .iter()
        .map(|&theta| {
            let c = ProbeConfig { theta, ..cfg.clone() };
            if !(theta > 0.0 && theta <= 1.0) {
                return Err(Error::range("theta", format!("need 0 < theta <= 1, got {theta}")));
            }
            overlap_probe_on(&g, &c, master_seed)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::overlap_spectrum_exact;

    fn graph10() -> Graph {
        Graph::empty(10)
    }

    #[test]
    fn pairwise_overlap_examples() {
        let g = graph10();
        let a = IndependentSet::new(&g, vec![1, 2, 3]).unwrap();
        let b = IndependentSet::new(&g, vec![2, 3, 4]).unwrap();
        let c = IndependentSet::new(&g, vec![7, 8]).unwrap();
        assert_eq!(pairwise_overlap(&a, &a).unwrap(), 0.3);
        assert_eq!(pairwise_overlap(&a, &b).unwrap(), 0.2);
        assert_eq!(pairwise_overlap(&a, &c).unwrap(), 0.0);
        let other = IndependentSet::new(&Graph::path(10), vec![1, 3]).unwrap();
        assert_eq!(pairwise_overlap(&a, &other), Err(Error::HostMismatch));
    }

    #[test]
    fn widest_gap_rules() {
        assert_eq!(widest_gap(&[1, 0, 0, 1, 0, 0, 0, 2], 2), Some((4, 7)));
        assert_eq!(widest_gap(&[1, 0, 1], 2), None);
        assert_eq!(widest_gap(&[0, 0, 1, 1, 0, 0], 2), None);
        assert_eq!(widest_gap(&[1, 0, 0, 1, 0, 0, 1], 2), Some((1, 3)));
        assert_eq!(widest_gap(&[0, 0], 1), None);
    }

    #[test]
    fn exact_sampler_matches_spectrum_on_cycle() {
        // C_5 has 5 maximum sets; the instance is fixed by drawing n=5, d=2
        let cfg = ProbeConfig {
            instance: InstanceSpec::regular(5, 2),
            theta: 1.0,
            sampler: Sampler::Exact,
            runs: 0,
            pairs: 1000,
            include_diagonal: true,
            bins: DEFAULT_BINS,
        };
        let hist = overlap_probe(&cfg, 3).unwrap();
        let g = Graph::cycle(5).unwrap();
        let spec = overlap_spectrum_exact(&g, 1.0, true).unwrap();
        assert_eq!(hist.support(), spec.support());
        assert_eq!(hist.samples, 15);
        assert!(hist.provenance.census);
    }

    #[test]
    fn edgeless_graph_puts_all_mass_at_one() {
        let cfg = ProbeConfig {
            instance: InstanceSpec::er(8, 0.0),
            theta: 0.01,
            sampler: Sampler::Algorithm(Algorithm::Greedy),
            runs: 10,
            pairs: 20,
            include_diagonal: false,
            bins: DEFAULT_BINS,
        };
        let hist = overlap_probe(&cfg, 1).unwrap();
        assert_eq!(hist.support(), vec![8]);
        assert_eq!(hist.samples, 20);
        assert!(!hist.provenance.census);
    }

    #[test]
    fn no_qualifying_solutions_is_reported_in_band() {
        let cfg = ProbeConfig {
            instance: InstanceSpec::regular(40, 3),
            theta: 1.0,
            sampler: Sampler::Algorithm(Algorithm::RandomPriority),
            runs: 5,
            pairs: 10,
            include_diagonal: true,
            bins: DEFAULT_BINS,
        };
        let hist = overlap_probe(&cfg, 2).unwrap();
        assert!(hist.insufficient_yield);
        assert_eq!(hist.samples, 0);
    }
}
