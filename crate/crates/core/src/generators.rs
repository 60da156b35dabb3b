//! Samplers for the random ensembles: uniform d-regular graphs,
//! Erdős–Rényi graphs, K-uniform hypergraphs and Gaussian p-spin tensors.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::graph::{Graph, Hypergraph};
use crate::rng::SeededRng;
use crate::tensor::{SpinTensor, DEFAULT_DENSE_CAP};

/// Largest degree sampled by the pairing model with full restart.
///
/// The pairing model yields a simple graph with probability about
/// `exp(-(d^2 - 1) / 4)`, roughly 1/8000 at d = 6 and 1/10^9 at d = 9. Above
/// this degree, points are paired one at a time while rejecting loops and
/// repeated edges, restarting only when no admissible pair is left.
pub const EXACT_PAIRING_MAX_DEGREE: usize = 6;

// Upper bound on edges a Bernoulli ensemble may be asked to hold.
const MAX_EXPECTED_EDGES: f64 = 2.0e8;

/// Uniform random simple d-regular graph on `n` nodes.
pub fn gen_regular(n: usize, d: usize, rng: &mut SeededRng) -> Result<Graph> {
    if (n * d) % 2 == 1 {
        return Err(Error::Parity { n, d });
    }
    if d >= n && !(n == 0 && d == 0) {
        return Err(Error::Infeasible { n, d });
    }
    if d == 0 {
        return Ok(Graph::empty(n));
    }
    if d == n - 1 {
        return Ok(Graph::complete(n));
    }
    let edges = if d <= EXACT_PAIRING_MAX_DEGREE {
        pairing_with_restart(n, d, rng)
    } else {
        sequential_pairing(n, d, rng)
    };
    Ok(Graph::from_sorted_edges(n, edges))
}

/// Pairing (configuration) model, restarted from scratch on any loop or
/// multi-edge. Exactly uniform over simple d-regular graphs.
pub fn pairing_with_restart(n: usize, d: usize, rng: &mut SeededRng) -> Vec<(usize, usize)> {
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let half = points.len() / 2;
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
    'attempt: loop {
        points.shuffle(rng);
        for list in &mut adj {
            list.clear();
        }
        for i in 0..half {
            let (u, v) = (points[2 * i], points[2 * i + 1]);
            if u == v || adj[u].contains(&v) {
                continue 'attempt;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        return sorted_edges(&adj);
    }
}

/// Pair random unpaired points one at a time, rejecting pairs that would
/// create a loop or a repeated edge; restart when no admissible pair remains.
fn sequential_pairing(n: usize, d: usize, rng: &mut SeededRng) -> Vec<(usize, usize)> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
    let mut points: Vec<usize> = Vec::with_capacity(n * d);
    'attempt: loop {
        points.clear();
        points.extend((0..n).flat_map(|v| std::iter::repeat_n(v, d)));
        for list in &mut adj {
            list.clear();
        }
        let mut failures = 0usize;
        while !points.is_empty() {
            let len = points.len();
            let i = rng.random_range(0..len);
            let mut j = rng.random_range(0..len - 1);
            if j >= i {
                j += 1;
            }
            let (u, v) = (points[i], points[j]);
            if u != v && !adj[u].contains(&v) {
                adj[u].push(v);
                adj[v].push(u);
                points.swap_remove(i.max(j));
                points.swap_remove(i.min(j));
                failures = 0;
                continue;
            }
            failures += 1;
            if failures > 64 + len {
                if !has_admissible_pair(&points, &adj) {
                    continue 'attempt;
                }
                failures = 0;
            }
        }
        return sorted_edges(&adj);
    }
}

fn has_admissible_pair(points: &[usize], adj: &[Vec<usize>]) -> bool {
    let mut nodes = points.to_vec();
    nodes.sort_unstable();
    nodes.dedup();
    nodes
        .iter()
        .enumerate()
        .any(|(i, &u)| nodes[i + 1..].iter().any(|v| !adj[u].contains(v)))
}

fn sorted_edges(adj: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    edges.sort_unstable();
    edges
}

/// Erdős–Rényi graph: each unordered pair present independently with
/// probability `d / n`.
pub fn gen_er(n: usize, d: f64, rng: &mut SeededRng) -> Result<Graph> {
    if d.is_nan() || d < 0.0 || d > n as f64 {
        return Err(Error::range("average degree", format!("need 0 <= d <= n = {n}, got {d}")));
    }
    if n == 0 || d == 0.0 {
        return Ok(Graph::empty(n));
    }
    let p = d / n as f64;
    if p >= 1.0 {
        return Ok(Graph::complete(n));
    }
    let total = n as u128 * (n as u128 - 1) / 2;
    check_expected_edges(total, p)?;
    // pair index r enumerates (u, v), u < v, in colex order: r = C(v, 2) + u
    let mut edges = Vec::new();
    let mut v = 1usize;
    let mut u = 0usize;
    let mut first = true;
    loop {
        let skip = geometric_skip(rng, p);
        let step = if first { skip } else { skip.saturating_add(1) };
        first = false;
        let mut step = step;
        // advance (u, v) by `step` pairs
        while step > 0 {
            let room = (v - u) as u128;
            if (step as u128) < room {
                u += step as usize;
                step = 0;
            } else {
                step -= room as u64;
                v += 1;
                u = 0;
                if v >= n {
                    break;
                }
            }
        }
        if v >= n {
            break;
        }
        edges.push((u, v));
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_edges(n, edges))
}

/// K-uniform hypergraph: each K-subset present independently with
/// probability `d / C(n - 1, K - 1)`.
pub fn gen_hypergraph(n: usize, d: f64, k: usize, rng: &mut SeededRng) -> Result<Hypergraph> {
    if k < 2 || k > n {
        return Err(Error::Arity { k, n });
    }
    let denom = binomial(n as u128 - 1, k as u128 - 1)
        .ok_or_else(|| Error::range("hypergraph size", "C(n-1, K-1) overflows"))?;
    if d.is_nan() || d < 0.0 || d > denom as f64 {
        return Err(Error::range(
            "average degree",
            format!("need 0 <= d <= C(n-1, K-1) = {denom}, got {d}"),
        ));
    }
    let total = binomial(n as u128, k as u128)
        .ok_or_else(|| Error::range("hypergraph size", "C(n, K) overflows"))?;
    let q = d / denom as f64;
    if q == 0.0 {
        return Ok(Hypergraph::from_sorted_edges(n, k, Vec::new()));
    }
    check_expected_edges(total, q)?;
    let mut edges = Vec::new();
    let mut rank: u128 = 0;
    let mut first = true;
    loop {
        let skip = if q >= 1.0 { 0 } else { geometric_skip(rng, q) };
        let step = if first { skip as u128 } else { skip as u128 + 1 };
        first = false;
        rank = match rank.checked_add(step) {
            Some(r) if r < total => r,
            _ => break,
        };
        edges.push(unrank_colex(rank, n, k));
    }
    edges.sort_unstable();
    Ok(Hypergraph::from_sorted_edges(n, k, edges))
}

/// Gaussian p-spin tensor under the default dense-size cap.
pub fn gen_pspin(n: usize, p: usize, rng: &mut SeededRng) -> Result<SpinTensor> {
    gen_pspin_with_cap(n, p, DEFAULT_DENSE_CAP, rng)
}

/// Each stored (sorted-tuple) entry is an independent standard normal.
pub fn gen_pspin_with_cap(
    n: usize,
    p: usize,
    cap: u128,
    rng: &mut SeededRng,
) -> Result<SpinTensor> {
    let mut t = SpinTensor::zeros_with_cap(n, p, cap)?;
    for v in t.values_mut() {
        *v = rng.sample(StandardNormal);
    }
    Ok(t)
}

/// Failures before the next success of a Bernoulli(p) sequence.
fn geometric_skip(rng: &mut SeededRng, p: f64) -> u64 {
    let u: f64 = rng.random();
    let s = ((1.0 - u).ln() / (-p).ln_1p()).floor();
    if s >= u64::MAX as f64 {
        u64::MAX
    } else {
        s as u64
    }
}

fn check_expected_edges(total: u128, p: f64) -> Result<()> {
    let expected = total as f64 * p;
    if expected > MAX_EXPECTED_EDGES {
        return Err(Error::Capacity {
            what: "random (hyper)graph edges",
            needed: expected as u128,
            cap: MAX_EXPECTED_EDGES as u128,
        });
    }
    Ok(())
}

pub(crate) fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// K-subset with colex rank `rank`: the unique c_1 < ... < c_K with
/// `rank = sum_i C(c_i, i)`.
fn unrank_colex(mut rank: u128, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0usize; k];
    let mut hi = n;
    for i in (1..=k).rev() {
        // largest c < hi with C(c, i) <= rank
        let (mut lo, mut top) = (i - 1, hi - 1);
        while lo < top {
            let mid = (lo + top).div_ceil(2);
            if binomial(mid as u128, i as u128).is_some_and(|b| b <= rank) {
                lo = mid;
            } else {
                top = mid - 1;
            }
        }
        out[i - 1] = lo;
        rank -= binomial(lo as u128, i as u128).unwrap_or(0);
        hi = lo;
    }
    out
}
