use std::fmt;

use crate::algorithms::{
    degree_greedy_is, gnn_independent_set, greedy_is, random_priority_is, Depth, LocalRule, RuleSpec,
};
use crate::error::{Error, Result};
use crate::generators::{gen_er, gen_regular};
use crate::graph::Graph;
use crate::problems::IndependentSet;
use crate::rng::SeededRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ensemble {
    /// Uniform random d-regular graph.
    Regular,
    /// Erdős–Rényi graph with average degree d.
    ErdosRenyi,
}

impl Ensemble {
    pub fn id(self) -> &'static str {
        match self {
            Ensemble::Regular => "regular",
            Ensemble::ErdosRenyi => "er",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "regular" => Ok(Ensemble::Regular),
            "er" => Ok(Ensemble::ErdosRenyi),
            other => Err(Error::Unknown {
                kind: "graph ensemble",
                name: other.to_string(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InstanceSpec {
    pub ensemble: Ensemble,
    pub n: usize,
    pub d: f64,
}

impl InstanceSpec {
    pub fn regular(n: usize, d: usize) -> Self {
        Self {
            ensemble: Ensemble::Regular,
            n,
            d: d as f64,
        }
    }

    pub fn er(n: usize, d: f64) -> Self {
        Self {
            ensemble: Ensemble::ErdosRenyi,
            n,
            d,
        }
    }

    /// Generator preconditions, checked without sampling.
    pub fn validate(&self) -> Result<()> {
        match self.ensemble {
            Ensemble::Regular => {
                if self.d < 0.0 || self.d.fract() != 0.0 {
                    return Err(Error::range("degree", format!("regular graphs need an integer d, got {}", self.d)));
                }
                let d = self.d as usize;
                if (self.n * d) % 2 == 1 {
                    return Err(Error::Parity { n: self.n, d });
                }
                if d >= self.n && self.n > 0 {
                    return Err(Error::Infeasible { n: self.n, d });
                }
                Ok(())
            }
            Ensemble::ErdosRenyi => {
                if self.d.is_nan() || self.d < 0.0 || self.d > self.n as f64 {
                    return Err(Error::range("average degree", format!("need 0 <= d <= n = {}, got {}", self.n, self.d)));
                }
                Ok(())
            }
        }
    }

    pub fn generate(&self, rng: &mut SeededRng) -> Result<Graph> {
        match self.ensemble {
            Ensemble::Regular => {
                self.validate()?;
                gen_regular(self.n, self.d as usize, rng)
            }
            Ensemble::ErdosRenyi => gen_er(self.n, self.d, rng),
        }
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={},d={})", self.ensemble.id(), self.n, self.d)
    }
}

/// An independent-set algorithm that can be run from a seed.
#[derive(Clone, Debug, PartialEq)]
pub enum Algorithm {
    Greedy,
    DegreeGreedy,
    RandomPriority,
    /// A shipped local rule at a fixed depth, followed by the projection.
    Rule(RuleSpec, Depth),
}

impl Algorithm {
    pub fn parse(id: &str) -> Result<Self> {
        match id {
            "greedy" => Ok(Algorithm::Greedy),
            "degree-greedy" => Ok(Algorithm::DegreeGreedy),
            "random-priority" => Ok(Algorithm::RandomPriority),
            other => Err(Error::Unknown {
                kind: "algorithm",
                name: other.to_string(),
            }),
        }
    }

    pub fn prepare(&self) -> Result<PreparedAlgorithm> {
        let rule = match self {
            Algorithm::Rule(spec, _) => Some(spec.build()?),
            _ => None,
        };
        Ok(PreparedAlgorithm {
            algorithm: self.clone(),
            rule,
        })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Greedy => f.write_str("greedy"),
            Algorithm::DegreeGreedy => f.write_str("degree-greedy"),
            Algorithm::RandomPriority => f.write_str("random-priority"),
            Algorithm::Rule(spec, depth) => write!(f, "{spec}@R={}", depth.0),
        }
    }
}

/// An algorithm with its rule (if any) built once for repeated runs.
pub struct PreparedAlgorithm {
    algorithm: Algorithm,
    rule: Option<Box<dyn LocalRule>>,
}

impl PreparedAlgorithm {
    pub fn algorithm(&self) -> &Algorithm {
        &self.algorithm
    }

    pub fn run(&self, g: &Graph, rng: &mut SeededRng) -> IndependentSet {
        match (&self.algorithm, &self.rule) {
            (Algorithm::Greedy, _) => greedy_is(g, rng),
            (Algorithm::DegreeGreedy, _) => degree_greedy_is(g, rng),
            (Algorithm::RandomPriority, _) => random_priority_is(g, rng),
            (Algorithm::Rule(_, depth), Some(rule)) => gnn_independent_set(g, rule.as_ref(), *depth, rng),
            (Algorithm::Rule(..), None) => unreachable!("rule is built in prepare()"),
        }
    }
}
