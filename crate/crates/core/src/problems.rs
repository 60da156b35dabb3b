//! Cost functions of the benchmark problems and their feasibility predicates.

use crate::error::{Error, Result};
use crate::graph::{Graph, Hypergraph};
use crate::tensor::SpinTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `{0, 1}` set indicator.
    Indicator,
    /// `{-1, +1}` spins.
    Spin,
}

impl Alphabet {
    fn label(self) -> &'static str {
        match self {
            Alphabet::Indicator => "{0,1}",
            Alphabet::Spin => "{-1,+1}",
        }
    }
}

/// A length-n string over a declared alphabet.
///
/// Serializes as one line over `{0,1}` or `{+,-}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    alphabet: Alphabet,
    values: Vec<i8>,
}

impl Assignment {
    pub fn indicator(values: Vec<u8>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|&&x| x > 1) {
            return Err(Error::Invalid(format!("indicator entry {bad} not in {{0,1}}")));
        }
        Ok(Self {
            alphabet: Alphabet::Indicator,
            values: values.into_iter().map(|x| x as i8).collect(),
        })
    }

    pub fn spins(values: Vec<i8>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|&&x| x != 1 && x != -1) {
            return Err(Error::Invalid(format!("spin entry {bad} not in {{-1,+1}}")));
        }
        Ok(Self {
            alphabet: Alphabet::Spin,
            values,
        })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            alphabet: Alphabet::Indicator,
            values: vec![0; n],
        }
    }

    pub fn constant_spins(n: usize, sign: i8) -> Self {
        Self {
            alphabet: Alphabet::Spin,
            values: vec![if sign < 0 { -1 } else { 1 }; n],
        }
    }

    /// Indicator of `members` over `n` nodes.
    pub fn from_members(n: usize, members: &[usize]) -> Result<Self> {
        let mut values = vec![0i8; n];
        for &u in members {
            *values
                .get_mut(u)
                .ok_or_else(|| Error::Invalid(format!("member {u} out of range for n = {n}")))? = 1;
        }
        Ok(Self {
            alphabet: Alphabet::Indicator,
            values,
        })
    }

    /// Spins from the low `n` bits of `mask`: bit set means `-1`.
    pub fn spins_from_mask(n: usize, mask: u64) -> Self {
        let values = (0..n)
            .map(|i| if (mask >> i) & 1 == 1 { -1 } else { 1 })
            .collect();
        Self {
            alphabet: Alphabet::Spin,
            values,
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn get(&self, i: usize) -> i8 {
        self.values[i]
    }

    /// Global spin flip; indicator assignments are returned unchanged.
    pub fn negated(&self) -> Self {
        match self.alphabet {
            Alphabet::Spin => Self {
                alphabet: Alphabet::Spin,
                values: self.values.iter().map(|&s| -s).collect(),
            },
            Alphabet::Indicator => self.clone(),
        }
    }

    pub(crate) fn flip(&mut self, i: usize) {
        self.values[i] = -self.values[i];
    }

    pub fn to_line(&self) -> String {
        self.values
            .iter()
            .map(|&x| match (self.alphabet, x) {
                (Alphabet::Indicator, 0) => '0',
                (Alphabet::Indicator, _) => '1',
                (Alphabet::Spin, 1) => '+',
                (Alphabet::Spin, _) => '-',
            })
            .collect()
    }

    /// Parse one line over `{0,1}` or `{+,-}`. An empty line is the empty
    /// indicator string.
    pub fn parse_line(line: &str) -> Result<Self> {
        let line = line.trim();
        let mut alphabet = None;
        let mut values = Vec::with_capacity(line.len());
        for (i, ch) in line.chars().enumerate() {
            let (a, v) = match ch {
                '0' => (Alphabet::Indicator, 0),
                '1' => (Alphabet::Indicator, 1),
                '+' => (Alphabet::Spin, 1),
                '-' => (Alphabet::Spin, -1),
                _ => return Err(Error::parse(1, format!("bad character `{ch}` at column {i}"))),
            };
            if *alphabet.get_or_insert(a) != a {
                return Err(Error::parse(1, "mixed {0,1} and {+,-} characters"));
            }
            values.push(v);
        }
        Ok(Self {
            alphabet: alphabet.unwrap_or(Alphabet::Indicator),
            values,
        })
    }

    fn expect(&self, alphabet: Alphabet, n: usize) -> Result<()> {
        if self.values.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: self.values.len(),
            });
        }
        if self.alphabet != alphabet {
            return Err(Error::Alphabet {
                expected: alphabet.label(),
            });
        }
        Ok(())
    }
}

/// Independent set of a specific host graph, members sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndependentSet {
    members: Vec<usize>,
    n: usize,
    host: u64,
}

impl IndependentSet {
    /// Validate `members` against `g`; order and duplicates in the input
    /// are normalized away.
    pub fn new(g: &Graph, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&u) = members.last() {
            if u >= g.n() {
                return Err(Error::Invalid(format!("member {u} out of range for n = {}", g.n())));
            }
        }
        let mut marked = vec![false; g.n()];
        for &u in &members {
            marked[u] = true;
        }
        for &u in &members {
            if let Some(&v) = g.neighbors(u).iter().find(|&&v| marked[v]) {
                return Err(Error::Invalid(format!("nodes {u} and {v} are adjacent")));
            }
        }
        Ok(Self::from_sorted_unchecked(g, members))
    }

    pub(crate) fn from_sorted_unchecked(g: &Graph, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self {
            members,
            n: g.n(),
            host: g.fingerprint(),
        }
    }

    pub(crate) fn from_mask(g: &Graph, mask: u64) -> Self {
        let members = (0..g.n()).filter(|&i| (mask >> i) & 1 == 1).collect();
        Self::from_sorted_unchecked(g, members)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Node count of the host graph.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Fingerprint of the host graph.
    pub fn host(&self) -> u64 {
        self.host
    }

    pub fn contains(&self, u: usize) -> bool {
        self.members.binary_search(&u).is_ok()
    }

    pub fn density(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.members.len() as f64 / self.n as f64
        }
    }

    pub fn to_assignment(&self) -> Assignment {
        let mut values = vec![0i8; self.n];
        for &u in &self.members {
            values[u] = 1;
        }
        Assignment {
            alphabet: Alphabet::Indicator,
            values,
        }
    }

    /// True when no non-member can be added without breaking independence.
    pub fn is_maximal(&self, g: &Graph) -> bool {
        let mut blocked = vec![false; g.n()];
        for &u in &self.members {
            blocked[u] = true;
            for &v in g.neighbors(u) {
                blocked[v] = true;
            }
        }
        blocked.into_iter().all(|b| b)
    }
}

/// `sum(sigma)` if `sigma` encodes an independent set of `g`, else 0.
pub fn is_cost(g: &Graph, sigma: &Assignment) -> Result<usize> {
    if is_feasible(g, sigma)? {
        Ok(sigma.values.iter().filter(|&&x| x == 1).count())
    } else {
        Ok(0)
    }
}

/// No edge has both endpoints set.
pub fn is_feasible(g: &Graph, sigma: &Assignment) -> Result<bool> {
    sigma.expect(Alphabet::Indicator, g.n())?;
    let s = &sigma.values;
    Ok(g.edges().iter().all(|&(u, v)| s[u] == 0 || s[v] == 0))
}

pub fn to_independent_set(g: &Graph, sigma: &Assignment) -> Result<IndependentSet> {
    if !is_feasible(g, sigma)? {
        return Err(Error::Invalid("assignment violates an edge".into()));
    }
    let members = (0..g.n()).filter(|&i| sigma.values[i] == 1).collect();
    Ok(IndependentSet::from_sorted_unchecked(g, members))
}

/// Number of edges whose endpoints carry opposite spins.
pub fn maxcut_cost(g: &Graph, sigma: &Assignment) -> Result<usize> {
    sigma.expect(Alphabet::Spin, g.n())?;
    let s = &sigma.values;
    Ok(g.edges().iter().filter(|&&(u, v)| s[u] != s[v]).count())
}

/// Number of hyperedges whose spin product is -1.
pub fn hyper_maxcut_cost(h: &Hypergraph, sigma: &Assignment) -> Result<usize> {
    sigma.expect(Alphabet::Spin, h.n())?;
    let s = &sigma.values;
    Ok(h.edges()
        .iter()
        .filter(|e| e.iter().filter(|&&u| s[u] < 0).count() % 2 == 1)
        .count())
}

/// Ordered-tuple sum `sum J_{i_1..i_p} s_{i_1}...s_{i_p}`, evaluated from
/// symmetric storage with multiplicity weights.
pub fn pspin_energy(j: &SpinTensor, sigma: &Assignment) -> Result<f64> {
    sigma.expect(Alphabet::Spin, j.n())?;
    let s = &sigma.values;
    let mut total = 0.0;
    for e in 0..j.len() {
        let negatives = j.tuple(e).iter().filter(|&&i| s[i] < 0).count();
        let term = j.weight(e) * j.value(e);
        if negatives % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ind(bits: &[u8]) -> Assignment {
        Assignment::indicator(bits.to_vec()).unwrap()
    }

    fn spins(s: &[i8]) -> Assignment {
        Assignment::spins(s.to_vec()).unwrap()
    }

    #[test]
    fn is_cost_examples() {
        let tri = Graph::complete(3);
        assert_eq!(is_cost(&tri, &ind(&[1, 0, 0])).unwrap(), 1);
        assert_eq!(is_cost(&tri, &ind(&[1, 1, 0])).unwrap(), 0);
        assert_eq!(is_cost(&Graph::empty(5), &ind(&[1; 5])).unwrap(), 5);
        assert_eq!(is_cost(&tri, &Assignment::zeros(3)).unwrap(), 0);
    }

    #[test]
    fn feasibility_examples() {
        let path = Graph::path(3);
        assert!(is_feasible(&path, &ind(&[1, 0, 1])).unwrap());
        assert!(!is_feasible(&path, &ind(&[1, 1, 0])).unwrap());
        assert!(is_feasible(&Graph::empty(0), &ind(&[])).unwrap());
        let set = to_independent_set(&path, &ind(&[1, 0, 1])).unwrap();
        assert_eq!(set.members(), &[0, 2]);
        assert!(to_independent_set(&path, &ind(&[0, 1, 1])).is_err());
    }

    #[test]
    fn length_and_alphabet_errors() {
        let tri = Graph::complete(3);
        assert_eq!(
            is_cost(&tri, &ind(&[1, 0])),
            Err(Error::LengthMismatch { expected: 3, got: 2 })
        );
        assert!(matches!(maxcut_cost(&tri, &ind(&[1, 0, 0])), Err(Error::Alphabet { .. })));
        assert!(matches!(is_feasible(&tri, &spins(&[1, 1, 1])), Err(Error::Alphabet { .. })));
    }

    #[test]
    fn maxcut_examples() {
        let k22 = Graph::complete_bipartite(2, 2);
        assert_eq!(maxcut_cost(&k22, &spins(&[1, 1, -1, -1])).unwrap(), 4);
        assert_eq!(maxcut_cost(&k22, &Assignment::constant_spins(4, 1)).unwrap(), 0);
        // brute force on the triangle
        let tri = Graph::complete(3);
        let best = (0..8u64)
            .map(|m| maxcut_cost(&tri, &Assignment::spins_from_mask(3, m)).unwrap())
            .max();
        assert_eq!(best, Some(2));
    }

    #[test]
    fn hyper_maxcut_examples() {
        let h = Hypergraph::from_edges(3, 3, [vec![0, 1, 2]]).unwrap();
        assert_eq!(hyper_maxcut_cost(&h, &spins(&[-1, 1, 1])).unwrap(), 1);
        let h4 = Hypergraph::from_edges(6, 4, [vec![0, 1, 2, 3], vec![2, 3, 4, 5]]).unwrap();
        assert_eq!(hyper_maxcut_cost(&h4, &Assignment::constant_spins(6, 1)).unwrap(), 0);
    }

    #[test]
    fn pspin_multiplicity() {
        let mut j = SpinTensor::zeros(2, 2).unwrap();
        assert_eq!(pspin_energy(&j, &spins(&[1, -1])).unwrap(), 0.0);
        j.set(&[0, 1], 1.0).unwrap();
        assert_eq!(pspin_energy(&j, &spins(&[1, -1])).unwrap(), -2.0);
    }

    #[test]
    fn assignment_lines() {
        let a = Assignment::parse_line("+-+").unwrap();
        assert_eq!(a.values(), &[1, -1, 1]);
        assert_eq!(a.to_line(), "+-+");
        let b = Assignment::parse_line("0110").unwrap();
        assert_eq!(b.alphabet(), Alphabet::Indicator);
        assert_eq!(b.to_line(), "0110");
        assert!(Assignment::parse_line("01+").is_err());
        assert!(Assignment::parse_line("012").is_err());
        assert!(Assignment::indicator(vec![2]).is_err());
        assert!(Assignment::spins(vec![0]).is_err());
    }

    #[test]
    fn independent_set_validation() {
        let path = Graph::path(3);
        assert!(IndependentSet::new(&path, vec![0, 1]).is_err());
        assert!(IndependentSet::new(&path, vec![3]).is_err());
        let s = IndependentSet::new(&path, vec![2, 0, 2]).unwrap();
        assert_eq!(s.members(), &[0, 2]);
        assert!(s.is_maximal(&path));
        assert!(!IndependentSet::new(&path, vec![0]).unwrap().is_maximal(&path));
    }
}
