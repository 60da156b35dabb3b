//! Monte Carlo probes: overlap histograms, density ratios, locality
//! perturbations and MAXCUT scaling fits.
//!
//! Every experiment is a pure function of its parameters and a master
//! seed. Trial `t` draws from stream `t` of the master seed (see
//! [`SeededRng::for_trial`](crate::rng::SeededRng::for_trial)), trials run
//! on the rayon pool, and results are collected in trial order.

mod density;
mod instance;
mod locality;
mod overlap;
mod scaling;
mod stats;

pub use density::{
    density_experiment, greedy_ratio_experiment, local_vs_greedy_experiment, ComparisonRow, ComparisonTable,
    DensityEstimate,
};
pub use instance::{Algorithm, Ensemble, InstanceSpec, PreparedAlgorithm};
pub use locality::{locality_perturbation_test, LocalityReport};
pub use overlap::{
    ogp_scan, overlap_probe, overlap_probe_on, pairwise_overlap, widest_gap, OverlapHistogram, ProbeConfig,
    Provenance, Sampler, ThresholdMode, DEFAULT_BINS, MIN_GAP_BINS, SMALL_N,
};
pub use scaling::{
    fit_sqrt_scaling, maxcut_point, maxcut_scaling_experiment, CutAlgorithm, ScalingFitResult, ScalingPoint,
    DEFAULT_FLIP_ROUNDS,
};
pub use stats::{is_benchmark_density, mean_stderr};
