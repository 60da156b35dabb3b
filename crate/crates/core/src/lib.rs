//! Random combinatorial optimization instances, greedy and depth-R local
//! algorithms, exact small-instance oracles, and Monte Carlo probes of the
//! overlap gap property.
//!
//! The crate covers maximum independent set on random regular and
//! Erdős–Rényi graphs, MAXCUT on graphs and K-uniform hypergraphs, and the
//! Gaussian p-spin energy. Everything random is driven by [`SeededRng`], so
//! each object and each experiment is a pure function of its seed.

pub mod algorithms;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod problems;
pub mod rng;
pub mod tensor;

pub use error::{Error, Result};
pub use graph::{CutInstance, Graph, Hypergraph};
pub use problems::{Alphabet, Assignment, IndependentSet};
pub use rng::SeededRng;
pub use tensor::SpinTensor;
