use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;
use crate::problems::IndependentSet;
use crate::rng::SeededRng;

/// Scan nodes in a uniformly random order, adding each node that has no
/// previously added neighbor. The result is maximal.
pub fn greedy_is(g: &Graph, rng: &mut SeededRng) -> IndependentSet {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(rng);
    let mut blocked = vec![false; g.n()];
    let mut members = Vec::new();
    for u in order {
        if blocked[u] {
            continue;
        }
        members.push(u);
        blocked[u] = true;
        for &v in g.neighbors(u) {
            blocked[v] = true;
        }
    }
    members.sort_unstable();
    IndependentSet::from_sorted_unchecked(g, members)
}

/// Repeatedly take a node of minimum residual degree (ties uniform at
/// random), then delete it and its neighbors. The result is maximal.
pub fn degree_greedy_is(g: &Graph, rng: &mut SeededRng) -> IndependentSet {
    let n = g.n();
    let mut queue = DegreeBuckets::new(g);
    let mut alive = vec![true; n];
    let mut members = Vec::new();
    while let Some(u) = queue.pop_min_random(rng) {
        members.push(u);
        alive[u] = false;
        for &w in g.neighbors(u) {
            if !alive[w] {
                continue;
            }
            alive[w] = false;
            queue.remove(w);
            for &x in g.neighbors(w) {
                if alive[x] {
                    queue.decrement(x);
                }
            }
        }
    }
    members.sort_unstable();
    IndependentSet::from_sorted_unchecked(g, members)
}

/// Bucket queue over residual degrees with O(1) removal and decrement.
struct DegreeBuckets {
    buckets: Vec<Vec<usize>>,
    degree: Vec<usize>,
    slot: Vec<usize>,
    present: Vec<bool>,
    min: usize,
}

impl DegreeBuckets {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut buckets = vec![Vec::new(); g.max_degree() + 1];
        let mut degree = vec![0; n];
        let mut slot = vec![0; n];
        for u in 0..n {
            let d = g.degree(u);
            degree[u] = d;
            slot[u] = buckets[d].len();
            buckets[d].push(u);
        }
        Self {
            buckets,
            degree,
            slot,
            present: vec![true; n],
            min: 0,
        }
    }

    fn detach(&mut self, u: usize) {
        let d = self.degree[u];
        let i = self.slot[u];
        let bucket = &mut self.buckets[d];
        bucket.swap_remove(i);
        if let Some(&moved) = bucket.get(i) {
            self.slot[moved] = i;
        }
    }

    fn remove(&mut self, u: usize) {
        if self.present[u] {
            self.detach(u);
            self.present[u] = false;
        }
    }

    fn decrement(&mut self, u: usize) {
        if !self.present[u] {
            return;
        }
        self.detach(u);
        let d = self.degree[u] - 1;
        self.degree[u] = d;
        self.slot[u] = self.buckets[d].len();
        self.buckets[d].push(u);
        self.min = self.min.min(d);
    }

    fn pop_min_random(&mut self, rng: &mut SeededRng) -> Option<usize> {
        while self.min < self.buckets.len() && self.buckets[self.min].is_empty() {
            self.min += 1;
        }
        let bucket = self.buckets.get(self.min)?;
        let u = bucket[rng.random_range(0..bucket.len())];
        self.remove(u);
        Some(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_small_graphs() {
        let mut rng = SeededRng::new(1);
        assert_eq!(greedy_is(&Graph::complete(3), &mut rng).len(), 1);
        assert_eq!(greedy_is(&Graph::empty(5), &mut rng).len(), 5);
    }

    #[test]
    fn greedy_on_path_realizes_both_outcomes() {
        // Orders starting at node 1 give {1}; all other orders give {0, 2}.
        let path = Graph::path(3);
        let mut seen_small = false;
        let mut seen_large = false;
        for seed in 0..200 {
            let s = greedy_is(&path, &mut SeededRng::new(seed));
            match s.members() {
                [1] => seen_small = true,
                [0, 2] => seen_large = true,
                other => panic!("unexpected greedy output {other:?}"),
            }
        }
        assert!(seen_small && seen_large);
    }

    #[test]
    fn degree_greedy_small_graphs() {
        for seed in 0..20 {
            let mut rng = SeededRng::new(seed);
            assert_eq!(degree_greedy_is(&Graph::path(3), &mut rng).members(), &[0, 2]);
            let star = Graph::complete_bipartite(1, 5);
            assert_eq!(degree_greedy_is(&star, &mut rng).members(), &[1, 2, 3, 4, 5]);
        }
    }

    #[test]
    fn outputs_are_maximal() {
        let g = Graph::cycle(11).unwrap();
        for seed in 0..50 {
            let mut rng = SeededRng::new(seed);
            assert!(greedy_is(&g, &mut rng).is_maximal(&g));
            assert!(degree_greedy_is(&g, &mut rng).is_maximal(&g));
        }
    }
}
