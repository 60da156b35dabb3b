//! Simple graphs and K-uniform hypergraphs with their text formats.
//!
//! Graph file: first line `n m`, then `m` lines `u v` with `u < v`.
//! Hypergraph file: first line `n m K`, then `m` lines of `K` sorted ids.
//! Edges are written in lexicographic order, so writing a parsed file
//! reproduces a canonical file byte for byte.

use std::borrow::Cow;
use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Immutable simple undirected graph on nodes `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    fingerprint: u64,
}

impl Graph {
    /// Build from an edge list. Endpoint order within a pair does not matter;
    /// self-loops, duplicates and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::Invalid(format!("self-loop at node {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted_edges(n, list))
    }

    pub(crate) fn from_sorted_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let fingerprint = fingerprint(n, edges.iter().flat_map(|&(u, v)| [u, v]));
        Self {
            n,
            edges,
            adj,
            fingerprint,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_edges(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_sorted_edges(n, edges)
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_sorted_edges(n, edges)
    }

    /// Cycle on `n >= 3` nodes.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Invalid(format!("cycle needs n >= 3, got {n}")));
        }
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .collect();
        Self::from_sorted_edges(a + b, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Hash of `(n, edges)`, used to tie independent sets to their host.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// BFS distances from `source`; `None` for unreachable nodes.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 + self.edges.len() * 12);
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let head = parse_ids(header, 1)?;
        let [n, m] = head[..] else {
            return Err(Error::parse(1, "header must be `n m`"));
        };
        let mut edges = Vec::with_capacity(m);
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let ids = parse_ids(line, idx + 1)?;
            let [u, v] = ids[..] else {
                return Err(Error::parse(idx + 1, "edge line must be `u v`"));
            };
            if u >= v {
                return Err(Error::parse(idx + 1, "edge endpoints must satisfy u < v"));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::parse(
                1,
                format!("header declares {m} edges, found {}", edges.len()),
            ));
        }
        Self::from_edges(n, edges)
    }
}

/// Immutable K-uniform hypergraph on nodes `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Build from hyperedges; each must hold `k` distinct in-range nodes and
    /// no hyperedge may repeat.
    pub fn from_edges<I>(n: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        if k < 2 {
            return Err(Error::Arity { k, n });
        }
        let mut list = Vec::new();
        for mut e in edges {
            if e.len() != k {
                return Err(Error::Invalid(format!(
                    "hyperedge {e:?} has {} nodes, expected {k}",
                    e.len()
                )));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invalid(format!("hyperedge {e:?} repeats a node")));
            }
            if e[k - 1] >= n {
                return Err(Error::Invalid(format!(
                    "hyperedge {e:?} out of range for n = {n}"
                )));
            }
            list.push(e);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("duplicate hyperedge {:?}", w[0])));
        }
        Ok(Self::from_sorted_edges(n, k, list))
    }

    pub(crate) fn from_sorted_edges(n: usize, k: usize, edges: Vec<Vec<usize>>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            for &u in e {
                incidence[u].push(idx);
            }
        }
        Self {
            n,
            k,
            edges,
            incidence,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Indices of the hyperedges containing `u`.
    pub fn incident(&self, u: usize) -> &[usize] {
        &self.incidence[u]
    }

    /// Number of hyperedges containing `u`.
    pub fn degree(&self, u: usize) -> usize {
        self.incidence[u].len()
    }

    pub fn mean_degree(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        (self.edges.len() * self.k) as f64 / self.n as f64
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 + self.edges.len() * 4 * self.k);
        let _ = writeln!(out, "{} {} {}", self.n, self.edges.len(), self.k);
        for e in &self.edges {
            let mut first = true;
            for u in e {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{u}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let head = parse_ids(header, 1)?;
        let [n, m, k] = head[..] else {
            return Err(Error::parse(1, "header must be `n m K`"));
        };
        let mut edges = Vec::with_capacity(m);
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let ids = parse_ids(line, idx + 1)?;
            if ids.len() != k {
                return Err(Error::parse(idx + 1, format!("expected {k} node ids")));
            }
            if ids.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::parse(idx + 1, "node ids must be strictly increasing"));
            }
            edges.push(ids);
        }
        if edges.len() != m {
            return Err(Error::parse(
                1,
                format!("header declares {m} hyperedges, found {}", edges.len()),
            ));
        }
        Self::from_edges(n, k, edges)
    }
}

impl From<&Graph> for Hypergraph {
    fn from(g: &Graph) -> Self {
        let edges = g.edges().iter().map(|&(u, v)| vec![u, v]).collect();
        Hypergraph::from_sorted_edges(g.n(), 2, edges)
    }
}

/// Anything MAXCUT can be posed on: a graph or a K-uniform hypergraph.
pub trait CutInstance {
    fn as_hypergraph(&self) -> Cow<'_, Hypergraph>;
}

impl CutInstance for Graph {
    fn as_hypergraph(&self) -> Cow<'_, Hypergraph> {
        Cow::Owned(Hypergraph::from(self))
    }
}

impl CutInstance for Hypergraph {
    fn as_hypergraph(&self) -> Cow<'_, Hypergraph> {
        Cow::Borrowed(self)
    }
}

fn parse_ids(line: &str, line_no: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("bad integer `{tok}`")))
        })
        .collect()
}

// FNV-1a over the node count and the flattened edge list.
fn fingerprint(n: usize, ids: impl Iterator<Item = usize>) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    for x in std::iter::once(n).chain(ids) {
        for b in (x as u64).to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(PRIME);
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops_and_duplicates() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn adjacency_matches_edges() {
        let g = Graph::from_edges(4, [(2, 1), (0, 3), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 3), (1, 2)]);
        assert_eq!(g.neighbors(0), &[1, 3]);
        assert_eq!(g.neighbors(1), &[0, 2]);
        let total: usize = (0..4).map(|u| g.degree(u)).sum();
        assert_eq!(total, 2 * g.m());
        assert!(g.has_edge(3, 0));
        assert!(!g.has_edge(2, 3));
    }

    #[test]
    fn graph_text_round_trip() {
        let g = Graph::complete(4);
        let text = g.to_text();
        assert_eq!(text, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
        let back = Graph::from_text(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn graph_text_rejects_bad_input() {
        assert!(Graph::from_text("3 1\n1 0\n").is_err());
        assert!(Graph::from_text("3 2\n0 1\n").is_err());
        assert!(Graph::from_text("3 1\n0 x\n").is_err());
        assert!(Graph::from_text("").is_err());
    }

    #[test]
    fn hypergraph_validation_and_text() {
        assert!(Hypergraph::from_edges(5, 3, [vec![0, 1, 1]]).is_err());
        assert!(Hypergraph::from_edges(5, 3, [vec![0, 1]]).is_err());
        assert!(Hypergraph::from_edges(5, 3, [vec![0, 1, 2], vec![2, 1, 0]]).is_err());
        let h = Hypergraph::from_edges(5, 3, [vec![4, 0, 2], vec![0, 1, 2]]).unwrap();
        let text = h.to_text();
        assert_eq!(text, "5 2 3\n0 1 2\n0 2 4\n");
        assert_eq!(Hypergraph::from_text(&text).unwrap(), h);
        assert_eq!(h.incident(2), &[0, 1]);
        assert_eq!(h.degree(4), 1);
    }

    #[test]
    fn distances_on_path() {
        let g = Graph::path(4);
        assert_eq!(g.distances_from(0), vec![Some(0), Some(1), Some(2), Some(3)]);
        let g = Graph::empty(2);
        assert_eq!(g.distances_from(0), vec![Some(0), None]);
    }

    #[test]
    fn fingerprint_separates_graphs() {
        assert_ne!(Graph::path(4).fingerprint(), Graph::cycle(4).unwrap().fingerprint());
        assert_ne!(Graph::empty(3).fingerprint(), Graph::empty(4).fingerprint());
    }
}
