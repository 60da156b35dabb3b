//! Symmetric order-p coupling tensors for the p-spin energy.
//!
//! Only non-decreasing index tuples are stored, in lexicographic order,
//! diagonal tuples included. The energy sums over all ordered tuples, so
//! each stored entry carries the number of ordered arrangements of its
//! index multiset as a weight.
//!
//! File format: first line `n p`, then one line `i_1 ... i_p value` per
//! stored tuple, value in scientific notation with 17 significant digits.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Default cap on the dense size `n^p`; admits n = 64 at p = 3 and n = 512 at p = 2.
pub const DEFAULT_DENSE_CAP: u128 = 1 << 18;

#[derive(Clone, Debug, PartialEq)]
pub struct SpinTensor {
    n: usize,
    p: usize,
    // flattened sorted tuples, `p` ids per entry
    indices: Vec<usize>,
    weights: Vec<f64>,
    values: Vec<f64>,
}

impl SpinTensor {
    pub fn zeros(n: usize, p: usize) -> Result<Self> {
        Self::zeros_with_cap(n, p, DEFAULT_DENSE_CAP)
    }

    pub fn zeros_with_cap(n: usize, p: usize, cap: u128) -> Result<Self> {
        if p < 2 {
            return Err(Error::range("tensor order", format!("p must be >= 2, got {p}")));
        }
        let dense = dense_size(n, p);
        if dense > cap {
            return Err(Error::Capacity {
                what: "spin tensor",
                needed: dense,
                cap,
            });
        }
        let mut indices = Vec::new();
        let mut weights = Vec::new();
        if n > 0 {
            let mut tuple = vec![0usize; p];
            loop {
                indices.extend_from_slice(&tuple);
                weights.push(multiplicity(&tuple));
                if !next_sorted_tuple(&mut tuple, n) {
                    break;
                }
            }
        }
        let values = vec![0.0; weights.len()];
        Ok(Self {
            n,
            p,
            indices,
            weights,
            values,
        })
    }

    /// Tensor with the given stored values, in lexicographic tuple order.
    pub fn from_values(n: usize, p: usize, values: Vec<f64>) -> Result<Self> {
        let mut t = Self::zeros_with_cap(n, p, u128::MAX)?;
        if values.len() != t.values.len() {
            return Err(Error::Invalid(format!(
                "expected {} stored entries for n = {n}, p = {p}, got {}",
                t.values.len(),
                values.len()
            )));
        }
        t.values = values;
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of stored (sorted) tuples, `C(n + p - 1, p)`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn tuple(&self, entry: usize) -> &[usize] {
        &self.indices[entry * self.p..(entry + 1) * self.p]
    }

    pub fn value(&self, entry: usize) -> f64 {
        self.values[entry]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Count of ordered tuples sharing the stored entry's index multiset.
    pub fn weight(&self, entry: usize) -> f64 {
        self.weights[entry]
    }

    /// Stored position of the tuple, in any index order.
    pub fn position(&self, tuple: &[usize]) -> Option<usize> {
        if tuple.len() != self.p || tuple.iter().any(|&i| i >= self.n) {
            return None;
        }
        let mut key = tuple.to_vec();
        key.sort_unstable();
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.tuple(mid).cmp(&key[..]) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Coupling for any ordering of `tuple`.
    pub fn get(&self, tuple: &[usize]) -> Option<f64> {
        self.position(tuple).map(|i| self.values[i])
    }

    pub fn set(&mut self, tuple: &[usize], value: f64) -> Result<()> {
        let pos = self
            .position(tuple)
            .ok_or_else(|| Error::Invalid(format!("tuple {tuple:?} out of range")))?;
        self.values[pos] = value;
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 + self.len() * (self.p * 4 + 26));
        let _ = writeln!(out, "{} {}", self.n, self.p);
        for e in 0..self.len() {
            for &i in self.tuple(e) {
                let _ = write!(out, "{i} ");
            }
            let _ = writeln!(out, "{:.16e}", self.values[e]);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let head: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(1, format!("bad integer `{t}`"))))
            .collect::<Result<_>>()?;
        let [n, p] = head[..] else {
            return Err(Error::parse(1, "header must be `n p`"));
        };
        let mut t = Self::zeros_with_cap(n, p, u128::MAX)?;
        let mut seen = 0usize;
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let line_no = idx + 1;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != p + 1 {
                return Err(Error::parse(line_no, format!("expected {p} ids and a value")));
            }
            let ids: Vec<usize> = toks[..p]
                .iter()
                .map(|t| t.parse().map_err(|_| Error::parse(line_no, format!("bad id `{t}`"))))
                .collect::<Result<_>>()?;
            let value: f64 = toks[p]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad value `{}`", toks[p])))?;
            if seen >= t.len() || t.tuple(seen) != &ids[..] {
                return Err(Error::parse(
                    line_no,
                    "tuples must be sorted and listed in lexicographic order",
                ));
            }
            t.values[seen] = value;
            seen += 1;
        }
        if seen != t.len() {
            return Err(Error::parse(1, format!("expected {} entries, found {seen}", t.len())));
        }
        Ok(t)
    }
}

/// `n^p` as u128, saturating.
pub fn dense_size(n: usize, p: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..p {
        acc = acc.saturating_mul(n as u128);
    }
    acc
}

fn next_sorted_tuple(tuple: &mut [usize], n: usize) -> bool {
    let p = tuple.len();
    let mut i = p;
    while i > 0 {
        i -= 1;
        if tuple[i] + 1 < n {
            let v = tuple[i] + 1;
            for slot in &mut tuple[i..] {
                *slot = v;
            }
            return true;
        }
    }
    false
}

fn multiplicity(sorted: &[usize]) -> f64 {
    let mut w = factorial(sorted.len());
    let mut run = 1usize;
    for i in 1..=sorted.len() {
        if i < sorted.len() && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            w /= factorial(run);
            run = 1;
        }
    }
    w
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|x| x as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stored_tuples_for_n2_p2() {
        let t = SpinTensor::zeros(2, 2).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.tuple(0), &[0, 0]);
        assert_eq!(t.tuple(1), &[0, 1]);
        assert_eq!(t.tuple(2), &[1, 1]);
        assert_eq!(t.weight(0), 1.0);
        assert_eq!(t.weight(1), 2.0);
    }

    #[test]
    fn counts_match_multiset_formula() {
        // C(n + p - 1, p)
        assert_eq!(SpinTensor::zeros(4, 2).unwrap().len(), 10);
        assert_eq!(SpinTensor::zeros(5, 3).unwrap().len(), 35);
        assert_eq!(SpinTensor::zeros(0, 3).unwrap().len(), 0);
    }

    #[test]
    fn weights_sum_to_dense_size() {
        for (n, p) in [(3, 2), (4, 3), (3, 4)] {
            let t = SpinTensor::zeros(n, p).unwrap();
            let total: f64 = (0..t.len()).map(|e| t.weight(e)).sum();
            assert_eq!(total, dense_size(n, p) as f64);
        }
    }

    #[test]
    fn capacity_is_enforced() {
        let err = SpinTensor::zeros(1000, 3).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
        assert!(SpinTensor::zeros(64, 3).is_ok());
        assert!(SpinTensor::zeros(512, 2).is_ok());
        assert!(SpinTensor::zeros(65, 3).is_err());
    }

    #[test]
    fn get_and_set_ignore_index_order() {
        let mut t = SpinTensor::zeros(3, 3).unwrap();
        t.set(&[2, 0, 1], 1.5).unwrap();
        assert_eq!(t.get(&[0, 1, 2]), Some(1.5));
        assert_eq!(t.get(&[1, 2, 0]), Some(1.5));
        assert!(t.set(&[0, 3, 1], 1.0).is_err());
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let values = vec![0.1, -1.0 / 3.0, 2.5e-300, -0.0, 1e300, std::f64::consts::PI];
        let t = SpinTensor::from_values(3, 2, values).unwrap();
        let text = t.to_text();
        let back = SpinTensor::from_text(&text).unwrap();
        for (a, b) in t.values().iter().zip(back.values()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(back.to_text(), text);
        assert!(text.starts_with("3 2\n0 0 1.0000000000000001e-1\n"));
    }
}
