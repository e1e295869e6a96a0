//! Efficiency bounds for a graph and the instances that attain them.

mod construct;
mod report;
mod search;

pub use construct::{
    canonical_upper_instance, canonical_upper_instance_with, capped_sum_instance,
    sibling_lower_instance, sibling_lower_instance_with, Construction, WorstCaseInstance,
};
pub use report::{analyze_graph, efficiency_bounds, BoundsReport, GraphAnalysis, LabelledWitness};
pub use search::{
    adversarial_search, clique_minus_edge_chain, sample_instance, ChainCheck, SearchMode,
    SearchResult, EXHAUSTIVE_LIMIT, MAX_ACTIONS, MAX_TARGET_VALUE,
};
