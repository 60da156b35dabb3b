//! Depth-R message passing over per-node feature vectors.
//!
//! Each node starts from an iid uniform label in `[0, 1)` and an initial
//! feature vector derived from it. Every round all nodes advance together:
//! `h[u][t+1] = update(u, t, h[u][t], {h[v][t] : v in N(u)})`. After `R`
//! rounds a readout marks tentative members, and a one-round conflict
//! repair keeps a marked node only if its label beats every marked
//! neighbor. The full pipeline is therefore (R+1)-local.

use rand::Rng;
use rayon::prelude::*;

use crate::graph::Graph;
use crate::problems::IndependentSet;
use crate::rng::SeededRng;

// Rounds on graphs smaller than this run on the calling thread.
const PARALLEL_MIN_NODES: usize = 4096;

/// Number of synchronous update rounds, fixed per run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Depth(pub usize);

/// A local update rule: the update sees only the node's own features and
/// the multiset of its neighbors' features.
pub trait LocalRule: Send + Sync {
    fn name(&self) -> &str;

    /// Initial features of `node`, computed from its random label.
    fn init(&self, node: usize, label: f64) -> Vec<f64>;

    /// Features for round `round + 1`. Must return a vector of the same
    /// dimension as `own` and must not depend on the order of `neighbors`.
    fn update(&self, node: usize, round: usize, own: &[f64], neighbors: &[&[f64]]) -> Vec<f64>;

    /// Tentative decision from final features: include (`true`) or not.
    fn readout(&self, features: &[f64]) -> bool;
}

/// Per-node features at a given round plus the initial labels.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureState {
    round: usize,
    features: Vec<Vec<f64>>,
    labels: Vec<f64>,
}

impl FeatureState {
    pub fn round(&self) -> usize {
        self.round
    }

    pub fn features(&self, u: usize) -> &[f64] {
        &self.features[u]
    }

    pub fn label(&self, u: usize) -> f64 {
        self.labels[u]
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }
}

/// iid uniform `[0, 1)` labels, one per node in node order.
pub fn draw_labels(n: usize, rng: &mut SeededRng) -> Vec<f64> {
    (0..n).map(|_| rng.random::<f64>()).collect()
}

pub fn gnn_forward(g: &Graph, rule: &dyn LocalRule, depth: Depth, rng: &mut SeededRng) -> FeatureState {
    let labels = draw_labels(g.n(), rng);
    gnn_forward_with_labels(g, rule, depth, labels)
}

/// Forward pass from given labels. Output does not depend on scheduling.
pub fn gnn_forward_with_labels(
    g: &Graph,
    rule: &dyn LocalRule,
    depth: Depth,
    labels: Vec<f64>,
) -> FeatureState {
    assert_eq!(labels.len(), g.n(), "one label per node");
    let mut features: Vec<Vec<f64>> = labels
        .iter()
        .enumerate()
        .map(|(u, &l)| rule.init(u, l))
        .collect();
    for round in 0..depth.0 {
        let step = |u: usize| {
            let own = &features[u];
            let neigh: Vec<&[f64]> = g.neighbors(u).iter().map(|&v| features[v].as_slice()).collect();
            let next = rule.update(u, round, own, &neigh);
            assert_eq!(
                next.len(),
                own.len(),
                "rule `{}` changed the feature dimension of node {u}",
                rule.name()
            );
            next
        };
        features = if g.n() >= PARALLEL_MIN_NODES {
            (0..g.n()).into_par_iter().map(step).collect()
        } else {
            (0..g.n()).map(step).collect()
        };
    }
    FeatureState {
        round: depth.0,
        features,
        labels,
    }
}

/// Readout then label-priority conflict repair.
pub fn project_to_is(g: &Graph, state: &FeatureState, rule: &dyn LocalRule) -> IndependentSet {
    assert_eq!(state.n(), g.n(), "state was produced on a different graph");
    let marked: Vec<bool> = (0..g.n()).map(|u| rule.readout(&state.features[u])).collect();
    let labels = &state.labels;
    let members = (0..g.n())
        .filter(|&u| {
            marked[u]
                && g
                    .neighbors(u)
                    .iter()
                    .all(|&v| !marked[v] || labels[u] < labels[v])
        })
        .collect();
    IndependentSet::from_sorted_unchecked(g, members)
}

/// Forward pass plus projection.
pub fn gnn_independent_set(
    g: &Graph,
    rule: &dyn LocalRule,
    depth: Depth,
    rng: &mut SeededRng,
) -> IndependentSet {
    let state = gnn_forward(g, rule, depth, rng);
    project_to_is(g, &state, rule)
}

/// Keep each node whose label is strictly below all its neighbors' labels.
///
/// Draws labels exactly like [`gnn_forward`], so it matches the
/// label-broadcast rule at depth 1 under the same seed.
pub fn random_priority_is(g: &Graph, rng: &mut SeededRng) -> IndependentSet {
    let labels = draw_labels(g.n(), rng);
    let members = (0..g.n())
        .filter(|&u| g.neighbors(u).iter().all(|&v| labels[u] < labels[v]))
        .collect();
    IndependentSet::from_sorted_unchecked(g, members)
}
