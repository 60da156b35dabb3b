use thiserror::Error;

/// Errors raised by generators, cost functions, solvers and experiments.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree parity violated: n*d = {n}*{d} is odd")]
    Parity { n: usize, d: usize },

    #[error("infeasible degree: d = {d} needs at least {} nodes, got n = {n}", .d + 1)]
    Infeasible { n: usize, d: usize },

    #[error("{what} out of range: {detail}")]
    Range { what: &'static str, detail: String },

    #[error("arity K = {k} is invalid for n = {n} nodes")]
    Arity { k: usize, n: usize },

    #[error("capacity exceeded: {what} needs {needed} entries, cap is {cap}")]
    Capacity {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("length mismatch: assignment has {got} entries, instance has {expected} nodes")]
    LengthMismatch { expected: usize, got: usize },

    #[error("alphabet mismatch: expected {expected} assignment")]
    Alphabet { expected: &'static str },

    #[error("oracle cap exceeded: n = {n} > {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("pair budget exceeded: {pairs} pairs > budget {budget}")]
    BudgetExceeded { pairs: u128, budget: u128 },

    #[error("independent sets belong to different host graphs")]
    HostMismatch,

    #[error("invalid instance: {0}")]
    Invalid(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("scaling fit needs at least two distinct degrees, got {0}")]
    Fit(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Range {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
