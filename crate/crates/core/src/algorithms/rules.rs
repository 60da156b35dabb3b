//! Shipped library of local rules, addressed by identifier plus a flat
//! list of real coefficients.

use std::fmt;

use crate::algorithms::gnn::LocalRule;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    Exact(usize),
    /// `base` coefficients followed by any number of `stride`-sized groups.
    Repeating { base: usize, stride: usize },
}

impl Arity {
    fn accepts(self, k: usize) -> bool {
        match self {
            Arity::Exact(n) => k == n,
            Arity::Repeating { base, stride } => k >= base + stride && (k - base).is_multiple_of(stride),
        }
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arity::Exact(n) => write!(f, "{n}"),
            Arity::Repeating { base, stride } => write!(f, "{base}+{stride}k (k>=1)"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RuleInfo {
    pub id: &'static str,
    pub arity: Arity,
    pub params: &'static str,
    pub summary: &'static str,
    /// Coefficients used when an experiment sweeps the whole library.
    pub default_coeffs: &'static [f64],
}

pub const RULES: &[RuleInfo] = &[
    RuleInfo {
        id: "identity",
        arity: Arity::Exact(1),
        params: "tau",
        summary: "features stay at the label; include iff label < tau",
        default_coeffs: &[1.0],
    },
    RuleInfo {
        id: "label-broadcast",
        arity: Arity::Exact(0),
        params: "",
        summary: "learn the smallest neighbor label; include iff own label is smaller",
        default_coeffs: &[],
    },
    RuleInfo {
        id: "neighbor-sum",
        arity: Arity::Exact(2),
        params: "a tau",
        summary: "h <- h + a * sum(neighbors); include iff h < tau",
        default_coeffs: &[-0.25, 0.0],
    },
    RuleInfo {
        id: "neighbor-min",
        arity: Arity::Exact(0),
        params: "",
        summary: "track the minimum label of the radius-t ball; include iff own label is that minimum",
        default_coeffs: &[],
    },
    RuleInfo {
        id: "threshold",
        arity: Arity::Repeating { base: 1, stride: 2 },
        params: "tau s_0 b_0 [s_1 b_1 ...]",
        summary: "x <- s_t * x + b_t * mean(neighbors), last pair reused; include iff x < tau",
        default_coeffs: &[0.3, 1.0, -0.5],
    },
    RuleInfo {
        id: "priority-greedy",
        arity: Arity::Exact(0),
        params: "",
        summary: "synchronous random-priority greedy truncated at depth R; include iff decided in",
        default_coeffs: &[],
    },
];

/// A rule reference as written in configs: identifier and coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RuleSpec {
    pub id: String,
    pub coeffs: Vec<f64>,
}

impl RuleSpec {
    pub fn new(id: impl Into<String>, coeffs: Vec<f64>) -> Self {
        Self {
            id: id.into(),
            coeffs,
        }
    }

    /// Every shipped rule with its default coefficients.
    pub fn library() -> Vec<RuleSpec> {
        RULES
            .iter()
            .map(|r| RuleSpec::new(r.id, r.default_coeffs.to_vec()))
            .collect()
    }

    pub fn build(&self) -> Result<Box<dyn LocalRule>> {
        build_rule(&self.id, &self.coeffs)
    }
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)?;
        if !self.coeffs.is_empty() {
            let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
            write!(f, "[{}]", parts.join(","))?;
        }
        Ok(())
    }
}

pub fn rule_info(id: &str) -> Option<&'static RuleInfo> {
    RULES.iter().find(|r| r.id == id)
}

pub fn build_rule(id: &str, coeffs: &[f64]) -> Result<Box<dyn LocalRule>> {
    let info = rule_info(id).ok_or_else(|| Error::Unknown {
        kind: "rule",
        name: id.to_string(),
    })?;
    if !info.arity.accepts(coeffs.len()) {
        return Err(Error::Invalid(format!(
            "rule `{id}` takes {} coefficients, got {}",
            info.arity,
            coeffs.len()
        )));
    }
    if let Some(c) = coeffs.iter().find(|c| !c.is_finite()) {
        return Err(Error::Invalid(format!("rule `{id}` coefficient {c} is not finite")));
    }
    let rule: Box<dyn LocalRule> = match id {
        "identity" => Box::new(Identity { tau: coeffs[0] }),
        "label-broadcast" => Box::new(LabelBroadcast),
        "neighbor-sum" => Box::new(NeighborSum {
            a: coeffs[0],
            tau: coeffs[1],
        }),
        "neighbor-min" => Box::new(NeighborMin),
        "threshold" => Box::new(Threshold {
            tau: coeffs[0],
            schedule: coeffs[1..].chunks(2).map(|c| (c[0], c[1])).collect(),
        }),
        "priority-greedy" => Box::new(PriorityGreedy),
        _ => unreachable!("catalog and builder disagree on `{id}`"),
    };
    Ok(rule)
}

struct Identity {
    tau: f64,
}

impl LocalRule for Identity {
    fn name(&self) -> &str {
        "identity"
    }

    fn init(&self, _: usize, label: f64) -> Vec<f64> {
        vec![label]
    }

    fn update(&self, _: usize, _: usize, own: &[f64], _: &[&[f64]]) -> Vec<f64> {
        own.to_vec()
    }

    fn readout(&self, h: &[f64]) -> bool {
        h[0] < self.tau
    }
}

// [own label, smallest neighbor label seen]
struct LabelBroadcast;

impl LocalRule for LabelBroadcast {
    fn name(&self) -> &str {
        "label-broadcast"
    }

    fn init(&self, _: usize, label: f64) -> Vec<f64> {
        vec![label, f64::INFINITY]
    }

    fn update(&self, _: usize, _: usize, own: &[f64], nb: &[&[f64]]) -> Vec<f64> {
        let min = nb.iter().map(|h| h[0]).fold(f64::INFINITY, f64::min);
        vec![own[0], min]
    }

    fn readout(&self, h: &[f64]) -> bool {
        h[0] < h[1]
    }
}

struct NeighborSum {
    a: f64,
    tau: f64,
}

impl LocalRule for NeighborSum {
    fn name(&self) -> &str {
        "neighbor-sum"
    }

    fn init(&self, _: usize, label: f64) -> Vec<f64> {
        vec![label]
    }

    fn update(&self, _: usize, _: usize, own: &[f64], nb: &[&[f64]]) -> Vec<f64> {
        vec![own[0] + self.a * nb.iter().map(|h| h[0]).sum::<f64>()]
    }

    fn readout(&self, h: &[f64]) -> bool {
        h[0] < self.tau
    }
}

// [own label, minimum label within the current radius]
struct NeighborMin;

impl LocalRule for NeighborMin {
    fn name(&self) -> &str {
        "neighbor-min"
    }

    fn init(&self, _: usize, label: f64) -> Vec<f64> {
        vec![label, label]
    }

    fn update(&self, _: usize, _: usize, own: &[f64], nb: &[&[f64]]) -> Vec<f64> {
        let min = nb.iter().map(|h| h[1]).fold(own[1], f64::min);
        vec![own[0], min]
    }

    fn readout(&self, h: &[f64]) -> bool {
        h[0] <= h[1]
    }
}

struct Threshold {
    tau: f64,
    schedule: Vec<(f64, f64)>,
}

impl LocalRule for Threshold {
    fn name(&self) -> &str {
        "threshold"
    }

    fn init(&self, _: usize, label: f64) -> Vec<f64> {
        vec![label]
    }

    fn update(&self, _: usize, round: usize, own: &[f64], nb: &[&[f64]]) -> Vec<f64> {
        let (s, b) = self.schedule[round.min(self.schedule.len() - 1)];
        let mean = if nb.is_empty() {
            0.0
        } else {
            nb.iter().map(|h| h[0]).sum::<f64>() / nb.len() as f64
        };
        vec![s * own[0] + b * mean]
    }

    fn readout(&self, h: &[f64]) -> bool {
        h[0] < self.tau
    }
}

const UNDECIDED: f64 = 0.0;
const IN: f64 = 1.0;
const OUT: f64 = 2.0;

// [label, status]. An undecided node joins when no neighbor is in and its
// label beats every undecided neighbor; it leaves when a neighbor is in.
struct PriorityGreedy;

impl LocalRule for PriorityGreedy {
    fn name(&self) -> &str {
        "priority-greedy"
    }

    fn init(&self, _: usize, label: f64) -> Vec<f64> {
        vec![label, UNDECIDED]
    }

    fn update(&self, _: usize, _: usize, own: &[f64], nb: &[&[f64]]) -> Vec<f64> {
        if own[1] != UNDECIDED {
            return own.to_vec();
        }
        let status = if nb.iter().any(|h| h[1] == IN) {
            OUT
        } else if nb.iter().all(|h| h[1] == OUT || own[0] < h[0]) {
            IN
        } else {
            UNDECIDED
        };
        vec![own[0], status]
    }

    fn readout(&self, h: &[f64]) -> bool {
        h[1] == IN
    }
}
