//! Exact solvers and exhaustive enumeration for small instances.
//!
//! All solvers work on `u64` node masks. Sign patterns are scanned in Gray
//! code order, with the domain split by its top bits into chunks that run
//! in parallel and are merged in chunk order, so results do not depend on
//! the worker count.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{CutInstance, Graph};
use crate::problems::{pspin_energy, Assignment, IndependentSet};
use crate::tensor::SpinTensor;

/// Default node cap for branch-and-bound.
pub const DEFAULT_IS_CAP: usize = 60;
/// Node cap for full `2^n` enumeration of independent sets.
pub const FULL_ENUMERATION_CAP: usize = 20;
/// Node cap for exhaustive sign-pattern and θ-optimal enumeration.
pub const EXHAUSTIVE_CAP: usize = 24;
/// Default limit on pairs in an exact overlap spectrum.
pub const DEFAULT_PAIR_BUDGET: u128 = 50_000_000;

const CHUNK_BITS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witnesses {
    One,
    All,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactResult<V> {
    pub optimum: V,
    /// One optimal assignment, or all of them when requested.
    pub witnesses: Vec<Assignment>,
    /// Search-tree nodes (branch-and-bound) or assignments scanned.
    pub explored: u64,
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|u| g.neighbors(u).iter().fold(0u64, |m, &v| m | (1 << v)))
        .collect()
}

/// Maximum independent set by branch-and-bound.
pub fn exact_max_is(g: &Graph) -> Result<ExactResult<usize>> {
    exact_max_is_with_cap(g, DEFAULT_IS_CAP)
}

pub fn exact_max_is_with_cap(g: &Graph, cap: usize) -> Result<ExactResult<usize>> {
    check_cap(g.n(), cap.min(64))?;
    let adj = adjacency_masks(g);
    let all = full_mask(g.n());
    let mut search = Bnb {
        adj: &adj,
        best_size: 0,
        best_set: 0,
        explored: 0,
    };
    let seed = greedy_min_degree(&adj, all);
    search.best_size = seed.count_ones() as usize;
    search.best_set = seed;
    search.run(all, 0, 0);
    Ok(ExactResult {
        optimum: search.best_size,
        witnesses: vec![IndependentSet::from_mask(g, search.best_set).to_assignment()],
        explored: search.explored,
    })
}

struct Bnb<'a> {
    adj: &'a [u64],
    best_size: usize,
    best_set: u64,
    explored: u64,
}

impl Bnb<'_> {
    fn run(&mut self, cand: u64, size: usize, chosen: u64) {
        self.explored += 1;
        // residual node count bound
        if size + cand.count_ones() as usize <= self.best_size {
            return;
        }
        if cand == 0 {
            self.best_size = size;
            self.best_set = chosen;
            return;
        }
        let (mut min_v, mut min_d, mut max_v, mut max_d) = (0, u32::MAX, 0, 0);
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[v] & cand).count_ones();
            if d < min_d {
                (min_v, min_d) = (v, d);
            }
            if d > max_d {
                (max_v, max_d) = (v, d);
            }
        }
        // a node of residual degree <= 1 lies in some maximum set
        if min_d <= 1 {
            let bit = 1u64 << min_v;
            self.run(cand & !(self.adj[min_v] | bit), size + 1, chosen | bit);
            return;
        }
        let bit = 1u64 << max_v;
        self.run(cand & !(self.adj[max_v] | bit), size + 1, chosen | bit);
        self.run(cand & !bit, size, chosen);
    }
}

fn greedy_min_degree(adj: &[u64], mut cand: u64) -> u64 {
    let mut chosen = 0;
    while cand != 0 {
        let mut rest = cand;
        let (mut best_v, mut best_d) = (0, u32::MAX);
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (adj[v] & cand).count_ones();
            if d < best_d {
                (best_v, best_d) = (v, d);
            }
        }
        chosen |= 1 << best_v;
        cand &= !(adj[best_v] | (1 << best_v));
    }
    chosen
}

/// Maximum independent set by scanning all `2^n` subsets.
pub fn max_is_by_enumeration(g: &Graph) -> Result<ExactResult<usize>> {
    check_cap(g.n(), FULL_ENUMERATION_CAP)?;
    let adj = adjacency_masks(g);
    let n = g.n();
    let (best, mask) = (0..1u64 << n)
        .into_par_iter()
        .filter(|&m| is_independent(&adj, m))
        .map(|m| (m.count_ones() as usize, m))
        .reduce(|| (0, 0), |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
    Ok(ExactResult {
        optimum: best,
        witnesses: vec![IndependentSet::from_mask(g, mask).to_assignment()],
        explored: 1u64 << n,
    })
}

fn is_independent(adj: &[u64], mask: u64) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[v] & mask != 0 {
            return false;
        }
    }
    true
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Split an `nbits`-wide scan into `(low_bits, chunk count)`.
fn chunking(nbits: usize) -> (usize, u64) {
    let high = nbits.min(CHUNK_BITS);
    (nbits - high, 1u64 << high)
}

/// Maximum (hyper)graph cut over all sign patterns.
///
/// For even arity the last spin is pinned to +1, halving the scan, since a
/// global flip preserves every hyperedge product. Odd arity scans `2^n`.
pub fn exact_max_cut<C: CutInstance + ?Sized>(
    instance: &C,
    witnesses: Witnesses,
) -> Result<ExactResult<usize>> {
    let h = instance.as_hypergraph();
    let n = h.n();
    check_cap(n, EXHAUSTIVE_CAP)?;
    let symmetric = h.k().is_multiple_of(2);
    let nbits = if symmetric && n > 0 { n - 1 } else { n };
    let edge_masks: Vec<u64> = h
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u64, |m, &u| m | (1 << u)))
        .collect();
    let (low, chunks) = chunking(nbits);
    let per_chunk: Vec<(usize, Vec<u64>)> = (0..chunks)
        .into_par_iter()
        .map(|prefix| {
            let mut mask = prefix << low;
            let mut odd: Vec<bool> = edge_masks.iter().map(|&e| (e & mask).count_ones() % 2 == 1).collect();
            let mut cut = odd.iter().filter(|&&o| o).count();
            let mut best = cut;
            let mut found = vec![mask];
            for i in 1..1u64 << low {
                let bit = i.trailing_zeros() as usize;
                mask ^= 1 << bit;
                for &e in h.incident(bit) {
                    if odd[e] {
                        cut -= 1;
                    } else {
                        cut += 1;
                    }
                    odd[e] = !odd[e];
                }
                if cut > best {
                    best = cut;
                    found.clear();
                    found.push(mask);
                } else if cut == best && witnesses == Witnesses::All {
                    found.push(mask);
                }
            }
            (best, found)
        })
        .collect();
    let optimum = per_chunk.iter().map(|c| c.0).max().unwrap_or(0);
    let mut masks: Vec<u64> = per_chunk
        .into_iter()
        .filter(|c| c.0 == optimum)
        .flat_map(|c| c.1)
        .collect();
    finish_masks(&mut masks, n, symmetric, witnesses);
    Ok(ExactResult {
        optimum,
        witnesses: masks.into_iter().map(|m| Assignment::spins_from_mask(n, m)).collect(),
        explored: 1u64 << nbits,
    })
}

fn finish_masks(masks: &mut Vec<u64>, n: usize, symmetric: bool, witnesses: Witnesses) {
    match witnesses {
        Witnesses::One => masks.truncate(1),
        Witnesses::All => {
            if symmetric && n > 0 {
                let full = full_mask(n);
                let flipped: Vec<u64> = masks.iter().map(|m| m ^ full).collect();
                masks.extend(flipped);
            }
            masks.sort_unstable();
            masks.dedup();
        }
    }
}

/// Maximum p-spin energy over all sign patterns.
///
/// Energies are updated incrementally along the Gray code; the reported
/// optimum and witnesses are re-evaluated exactly with [`pspin_energy`].
pub fn exact_ground_state(j: &SpinTensor, witnesses: Witnesses) -> Result<ExactResult<f64>> {
    let n = j.n();
    check_cap(n, EXHAUSTIVE_CAP)?;
    let symmetric = j.p().is_multiple_of(2);
    let nbits = if symmetric && n > 0 { n - 1 } else { n };
    let coeff: Vec<f64> = (0..j.len()).map(|e| j.weight(e) * j.value(e)).collect();
    // entries whose sign changes when node i flips: i appears an odd number of times
    let mut odd_terms: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in 0..j.len() {
        let t = j.tuple(e);
        let mut k = 0;
        while k < t.len() {
            let mut run = 1;
            while k + run < t.len() && t[k + run] == t[k] {
                run += 1;
            }
            if run % 2 == 1 {
                odd_terms[t[k]].push(e);
            }
            k += run;
        }
    }
    let scale: f64 = coeff.iter().map(|c| c.abs()).sum::<f64>() + 1.0;
    let tol = 1e-9 * scale;
    let term_mask = |e: usize| {
        let t = j.tuple(e);
        t.iter().fold(0u64, |m, &i| m ^ (1 << i))
    };
    let masks_by_term: Vec<u64> = (0..j.len()).map(term_mask).collect();
    let (low, chunks) = chunking(nbits);
    let per_chunk: Vec<(f64, Vec<u64>)> = (0..chunks)
        .into_par_iter()
        .map(|prefix| {
            let mut mask = prefix << low;
            let mut sign: Vec<f64> = masks_by_term
                .iter()
                .map(|&t| if (t & mask).count_ones() % 2 == 1 { -1.0 } else { 1.0 })
                .collect();
            let mut energy: f64 = coeff.iter().zip(&sign).map(|(c, s)| c * s).sum();
            let mut best = energy;
            let mut found = vec![(energy, mask)];
            for i in 1..1u64 << low {
                let bit = i.trailing_zeros() as usize;
                mask ^= 1 << bit;
                for &e in &odd_terms[bit] {
                    energy -= 2.0 * coeff[e] * sign[e];
                    sign[e] = -sign[e];
                }
                match witnesses {
                    Witnesses::One => {
                        if energy > best {
                            best = energy;
                            found[0] = (energy, mask);
                        }
                    }
                    Witnesses::All => {
                        if energy > best + tol {
                            best = energy;
                            found.clear();
                            found.push((energy, mask));
                        } else if energy >= best - tol {
                            best = best.max(energy);
                            found.push((energy, mask));
                        }
                    }
                }
            }
            found.retain(|&(e, _)| e >= best - tol);
            (best, found.into_iter().map(|(_, m)| m).collect())
        })
        .collect();
    let top = per_chunk.iter().map(|c| c.0).fold(f64::NEG_INFINITY, f64::max);
    let candidates: Vec<(f64, u64)> = per_chunk
        .into_iter()
        .filter(|c| c.0 >= top - tol)
        .flat_map(|c| c.1)
        .map(|m| {
            let e = pspin_energy(j, &Assignment::spins_from_mask(n, m)).expect("length matches");
            (e, m)
        })
        .collect();
    let optimum = candidates.iter().map(|c| c.0).fold(f64::NEG_INFINITY, f64::max);
    let mut masks: Vec<u64> = match witnesses {
        Witnesses::One => candidates
            .iter()
            .filter(|c| c.0 == optimum)
            .map(|c| c.1)
            .min()
            .into_iter()
            .collect(),
        Witnesses::All => candidates.iter().filter(|c| c.0 >= optimum - tol).map(|c| c.1).collect(),
    };
    finish_masks(&mut masks, n, symmetric, witnesses);
    Ok(ExactResult {
        optimum,
        witnesses: masks.into_iter().map(|m| Assignment::spins_from_mask(n, m)).collect(),
        explored: 1u64 << nbits,
    })
}

/// Smallest size that counts as θ-optimal against an optimum of `opt`.
///
/// `ceil(θ * opt)`, with a 1e-9 allowance so that products such as
/// `0.8 * 5 = 4.000000000000001` round to the intended integer.
pub fn theta_threshold(theta: f64, opt: usize) -> usize {
    let x = theta * opt as f64 - 1e-9;
    if x <= 0.0 {
        0
    } else {
        x.ceil() as usize
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta <= 1.0 {
        Ok(())
    } else {
        Err(Error::range("theta", format!("need 0 < theta <= 1, got {theta}")))
    }
}

/// All independent sets of size at least `ceil(θ |I*|)`, sorted by members.
pub fn enumerate_theta_optimal_is(g: &Graph, theta: f64) -> Result<Vec<IndependentSet>> {
    let masks = theta_optimal_masks(g, theta)?;
    Ok(masks.into_iter().map(|m| IndependentSet::from_mask(g, m)).collect())
}

fn theta_optimal_masks(g: &Graph, theta: f64) -> Result<Vec<u64>> {
    check_theta(theta)?;
    check_cap(g.n(), EXHAUSTIVE_CAP)?;
    let opt = exact_max_is(g)?.optimum;
    let threshold = theta_threshold(theta, opt);
    let adj = adjacency_masks(g);
    let mut out = Vec::new();
    collect_sets(&adj, g.n(), 0, full_mask(g.n()), 0, threshold, &mut out);
    let mut sets: Vec<(Vec<usize>, u64)> = out
        .into_iter()
        .map(|m| ((0..g.n()).filter(|&i| (m >> i) & 1 == 1).collect(), m))
        .collect();
    sets.sort_unstable();
    Ok(sets.into_iter().map(|s| s.1).collect())
}

fn collect_sets(adj: &[u64], n: usize, v: usize, allowed: u64, chosen: u64, threshold: usize, out: &mut Vec<u64>) {
    let remaining = (allowed >> v).count_ones() as usize;
    if (chosen.count_ones() as usize) + remaining < threshold {
        return;
    }
    if v == n {
        out.push(chosen);
        return;
    }
    let bit = 1u64 << v;
    if allowed & bit != 0 {
        collect_sets(adj, n, v + 1, allowed & !adj[v], chosen | bit, threshold, out);
    }
    collect_sets(adj, n, v + 1, allowed & !bit, chosen, threshold, out);
}

/// Multiset of overlaps `|I_1 ∩ I_2| / n`, keyed by intersection size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapSpectrum {
    pub n: usize,
    pub include_diagonal: bool,
    /// intersection size -> number of unordered pairs
    pub counts: BTreeMap<usize, u64>,
}

impl OverlapSpectrum {
    pub fn pairs(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Intersection sizes that occur.
    pub fn support(&self) -> Vec<usize> {
        self.counts.keys().copied().collect()
    }

    /// `(overlap, count)` with overlap as a fraction of `n`.
    pub fn fractions(&self) -> Vec<(f64, u64)> {
        self.counts
            .iter()
            .map(|(&k, &c)| (if self.n == 0 { 0.0 } else { k as f64 / self.n as f64 }, c))
            .collect()
    }
}

/// Exact overlap spectrum over all unordered pairs of θ-optimal sets,
/// with or without the equal pairs `(I, I)`.
pub fn overlap_spectrum_exact(g: &Graph, theta: f64, include_diagonal: bool) -> Result<OverlapSpectrum> {
    overlap_spectrum_with_budget(g, theta, include_diagonal, DEFAULT_PAIR_BUDGET)
}

pub fn overlap_spectrum_with_budget(
    g: &Graph,
    theta: f64,
    include_diagonal: bool,
    budget: u128,
) -> Result<OverlapSpectrum> {
    let masks = theta_optimal_masks(g, theta)?;
    let r = masks.len() as u128;
    let pairs = if include_diagonal { r * (r + 1) / 2 } else { r * r.saturating_sub(1) / 2 };
    if pairs > budget {
        return Err(Error::BudgetExceeded { pairs, budget });
    }
    let partial: Vec<BTreeMap<usize, u64>> = (0..masks.len())
        .into_par_iter()
        .map(|i| {
            let mut local = BTreeMap::new();
            let start = if include_diagonal { i } else { i + 1 };
            for &b in &masks[start..] {
                *local.entry((masks[i] & b).count_ones() as usize).or_insert(0) += 1;
            }
            local
        })
        .collect();
    let mut counts = BTreeMap::new();
    for local in partial {
        for (k, c) in local {
            *counts.entry(k).or_insert(0) += c;
        }
    }
    Ok(OverlapSpectrum {
        n: g.n(),
        include_diagonal,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Hypergraph;

    fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    #[test]
    fn max_is_examples() {
        assert_eq!(exact_max_is(&Graph::cycle(5).unwrap()).unwrap().optimum, 2);
        assert_eq!(exact_max_is(&Graph::complete(4)).unwrap().optimum, 1);
        assert_eq!(exact_max_is(&petersen()).unwrap().optimum, 4);
        assert_eq!(max_is_by_enumeration(&petersen()).unwrap().optimum, 4);
        assert_eq!(exact_max_is(&Graph::empty(0)).unwrap().optimum, 0);
    }

    #[test]
    fn max_is_witness_is_optimal_and_feasible() {
        let g = petersen();
        let res = exact_max_is(&g).unwrap();
        let w = &res.witnesses[0];
        assert_eq!(crate::problems::is_cost(&g, w).unwrap(), 4);
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(exact_max_is(&Graph::empty(61)), Err(Error::CapExceeded { .. })));
        assert!(matches!(max_is_by_enumeration(&Graph::empty(21)), Err(Error::CapExceeded { .. })));
        assert!(exact_max_cut(&Graph::empty(25), Witnesses::One).is_err());
        assert!(enumerate_theta_optimal_is(&Graph::empty(25), 1.0).is_err());
    }

    #[test]
    fn max_cut_examples() {
        assert_eq!(exact_max_cut(&Graph::complete_bipartite(3, 3), Witnesses::One).unwrap().optimum, 9);
        let tri = exact_max_cut(&Graph::complete(3), Witnesses::All).unwrap();
        assert_eq!(tri.optimum, 2);
        assert_eq!(tri.witnesses.len(), 6);
        let h = Hypergraph::from_edges(4, 4, [vec![0, 1, 2, 3]]).unwrap();
        let res = exact_max_cut(&h, Witnesses::All).unwrap();
        assert_eq!(res.optimum, 1);
        assert_eq!(res.witnesses.len(), 8);
    }

    #[test]
    fn odd_arity_scans_full_domain() {
        // sign products of odd hyperedges change under a global flip
        let h = Hypergraph::from_edges(3, 3, [vec![0, 1, 2]]).unwrap();
        let res = exact_max_cut(&h, Witnesses::All).unwrap();
        assert_eq!(res.optimum, 1);
        assert_eq!(res.explored, 8);
        assert_eq!(res.witnesses.len(), 4);
    }

    #[test]
    fn ground_state_of_zero_tensor() {
        let j = SpinTensor::zeros(4, 3).unwrap();
        let res = exact_ground_state(&j, Witnesses::All).unwrap();
        assert_eq!(res.optimum, 0.0);
        assert_eq!(res.witnesses.len(), 16);
    }

    #[test]
    fn even_order_witnesses_closed_under_flip() {
        let mut j = SpinTensor::zeros(3, 2).unwrap();
        j.set(&[0, 1], 1.0).unwrap();
        j.set(&[1, 2], -0.5).unwrap();
        let res = exact_ground_state(&j, Witnesses::All).unwrap();
        for w in &res.witnesses {
            assert!(res.witnesses.contains(&w.negated()));
        }
        // best: s0 = s1, s1 = -s2 -> 2*1 + 2*0.5 = 3
        assert!((res.optimum - 3.0).abs() < 1e-12);
    }

    #[test]
    fn theta_threshold_rounding() {
        assert_eq!(theta_threshold(0.8, 5), 4);
        assert_eq!(theta_threshold(0.9, 5), 5);
        assert_eq!(theta_threshold(1.0, 7), 7);
        assert_eq!(theta_threshold(0.7, 10), 7);
        assert_eq!(theta_threshold(1e-6, 3), 1);
    }

    #[test]
    fn theta_optimal_sets() {
        let c5 = Graph::cycle(5).unwrap();
        let sets = enumerate_theta_optimal_is(&c5, 1.0).unwrap();
        assert_eq!(sets.len(), 5);
        assert!(sets.iter().all(|s| s.len() == 2));
        let k4 = enumerate_theta_optimal_is(&Graph::complete(4), 1.0).unwrap();
        let members: Vec<&[usize]> = k4.iter().map(|s| s.members()).collect();
        assert_eq!(members, vec![&[0][..], &[1], &[2], &[3]]);
        // every nonempty independent set of C5: 5 singletons + 5 pairs
        assert_eq!(enumerate_theta_optimal_is(&c5, 1e-9).unwrap().len(), 10);
        assert!(enumerate_theta_optimal_is(&c5, 0.0).is_err());
        assert!(enumerate_theta_optimal_is(&c5, 1.5).is_err());
    }

    #[test]
    fn overlap_spectrum_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let spec = overlap_spectrum_exact(&c5, 1.0, true).unwrap();
        assert_eq!(spec.pairs(), 15);
        assert_eq!(spec.support(), vec![0, 1, 2]);
        assert_eq!(spec.counts[&2], 5);
        let edgeless = overlap_spectrum_exact(&Graph::empty(3), 1.0, true).unwrap();
        assert_eq!(edgeless.fractions(), vec![(1.0, 1)]);
        let no_diag = overlap_spectrum_exact(&c5, 1.0, false).unwrap();
        assert_eq!(no_diag.pairs(), 10);
        assert!(matches!(
            overlap_spectrum_with_budget(&c5, 1.0, true, 14),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
