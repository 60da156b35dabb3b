//! Baseline greedy heuristics, the depth-R local-rule framework and a
//! flip-based MAXCUT local search.

mod cut;
mod gnn;
mod greedy;
pub mod rules;

pub use cut::{local_flip_cut, random_spins, FlipCutOutcome};
pub use gnn::{
    draw_labels, gnn_forward, gnn_forward_with_labels, gnn_independent_set, project_to_is,
    random_priority_is, Depth, FeatureState, LocalRule,
};
pub use greedy::{degree_greedy_is, greedy_is};
pub use rules::{build_rule, rule_info, RuleInfo, RuleSpec, RULES};
