//! The generalized distributed greedy algorithm, exhaustive optima and efficiency.

mod engine;
mod optimum;

pub use engine::{
    candidate_solutions, is_greedy_profile, replay, run_distributed_greedy, run_generalized_greedy,
    run_generalized_greedy_with_limit, AgentStep, GreedyOutcome, TiePolicy, BRANCH_LIMIT,
};
pub use optimum::{
    brute_force_opt, brute_force_opt_with_limit, clique_marginal_identity_check, efficiency,
    efficiency_with_limits, sample_profiles, EfficiencyReport, Optimum, OPT_LIMIT,
};
