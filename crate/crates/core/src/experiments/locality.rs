//! Perturbation check of R-locality: changes made only outside the
//! radius-(R+1) ball around a node must never change its membership.

use std::collections::BTreeSet;

use rand::Rng;

use crate::algorithms::{draw_labels, gnn_forward_with_labels, project_to_is, Depth, LocalRule};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SeededRng;

#[derive(Clone, Debug, PartialEq)]
pub struct LocalityReport {
    pub node: usize,
    pub depth: usize,
    /// Radius of the untouched ball, `depth + 1`.
    pub radius: usize,
    pub trials: usize,
    pub base_member: bool,
    /// Trials in which the node's membership differed from the base run.
    pub changes: usize,
    pub edge_edits: usize,
    pub passed: bool,
}

fn member(g: &Graph, rule: &dyn LocalRule, depth: Depth, labels: Vec<f64>, u: usize) -> bool {
    let state = gnn_forward_with_labels(g, rule, depth, labels);
    project_to_is(g, &state, rule).contains(u)
}

/// Re-run the pipeline `trials` times after rewiring edges and redrawing
/// labels strictly outside the radius-(R+1) ball around `u`.
pub fn locality_perturbation_test(
    g: &Graph,
    rule: &dyn LocalRule,
    depth: Depth,
    u: usize,
    trials: usize,
    rng: &mut SeededRng,
) -> Result<LocalityReport> {
    if u >= g.n() {
        return Err(Error::Precondition(format!("node {u} not in graph of {} nodes", g.n())));
    }
    let radius = depth.0 + 1;
    let outside: Vec<usize> = g
        .distances_from(u)
        .into_iter()
        .enumerate()
        .filter(|(_, d)| d.is_none_or(|d| d > radius))
        .map(|(v, _)| v)
        .collect();
    if outside.len() < 2 {
        return Err(Error::Precondition(format!(
            "the radius-{radius} ball around node {u} covers all but {} nodes",
            outside.len()
        )));
    }
    let is_outside = {
        let mut mask = vec![false; g.n()];
        for &v in &outside {
            mask[v] = true;
        }
        mask
    };

    let base_labels = draw_labels(g.n(), rng);
    let base_member = member(g, rule, depth, base_labels.clone(), u);
    let mut changes = 0;
    let mut edge_edits = 0;
    for _ in 0..trials {
        let mut edges: BTreeSet<(usize, usize)> = g.edges().iter().copied().collect();
        let ops = rng.random_range(1..=4);
        for _ in 0..ops {
            if perturb_edges(&mut edges, &outside, &is_outside, rng) {
                edge_edits += 1;
            }
        }
        let h = Graph::from_edges(g.n(), edges)?;
        let mut labels = base_labels.clone();
        for &v in &outside {
            labels[v] = rng.random();
        }
        if member(&h, rule, depth, labels, u) != base_member {
            changes += 1;
        }
    }
    Ok(LocalityReport {
        node: u,
        depth: depth.0,
        radius,
        trials,
        base_member,
        changes,
        edge_edits,
        passed: changes == 0,
    })
}

// One random edit among far nodes: a double-edge swap, a deletion or an
// insertion. Returns whether anything changed.
fn perturb_edges(
    edges: &mut BTreeSet<(usize, usize)>,
    outside: &[usize],
    is_outside: &[bool],
    rng: &mut SeededRng,
) -> bool {
    let far: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|&(a, b)| is_outside[a] && is_outside[b])
        .collect();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    match rng.random_range(0..3) {
        0 if far.len() >= 2 => {
            let (a, b) = far[rng.random_range(0..far.len())];
            let (c, d) = far[rng.random_range(0..far.len())];
            let (x, y) = if rng.random::<bool>() { ((a, c), (b, d)) } else { ((a, d), (b, c)) };
            let distinct = x.0 != x.1 && y.0 != y.1;
            if !distinct || (a, b) == (c, d) {
                return false;
            }
            let (x, y) = (key(x.0, x.1), key(y.0, y.1));
            if x == y || edges.contains(&x) || edges.contains(&y) {
                return false;
            }
            edges.remove(&(a, b));
            edges.remove(&(c, d));
            edges.insert(x);
            edges.insert(y);
            true
        }
        1 if !far.is_empty() => edges.remove(&far[rng.random_range(0..far.len())]),
        _ => {
            let a = outside[rng.random_range(0..outside.len())];
            let b = outside[rng.random_range(0..outside.len())];
            a != b && edges.insert(key(a, b))
        }
    }
}
