use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::InfoGraph;
use crate::par::{map_range, Execution};
use crate::rational::{self, Rational};
use crate::submodular::{Instance, Valuation};

use super::{run_generalized_greedy_with_limit, TiePolicy, BRANCH_LIMIT};

/// Default cap on `Π |X_i|` for exhaustive optimization.
pub const OPT_LIMIT: u128 = 10_000_000;

const CHUNK: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Optimum {
    #[serde(with = "rational::as_string")]
    pub value: Rational,
    pub profile: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EfficiencyReport {
    #[serde(with = "rational::as_string")]
    pub gamma: Rational,
    #[serde(with = "rational::as_string")]
    pub opt_value: Rational,
    #[serde(with = "rational::as_string")]
    pub sol_value: Rational,
    pub opt_profile: Vec<usize>,
    pub sol_profile: Vec<usize>,
    pub branches_explored: u64,
}

/// Profile number `index` in lexicographic order (agent 1 most significant).
fn decode(sizes: &[usize], mut index: usize) -> Vec<usize> {
    let mut profile = vec![0; sizes.len()];
    for i in (0..sizes.len()).rev() {
        profile[i] = index % sizes[i];
        index /= sizes[i];
    }
    profile
}

pub fn brute_force_opt<V: Valuation>(inst: &Instance<V>, exec: Execution) -> Result<Optimum> {
    brute_force_opt_with_limit(inst, exec, OPT_LIMIT)
}

/// Exhaustive maximum of `f` over `X_1 × … × X_n`. Among maximizers the first
/// profile in lexicographic order is returned, regardless of scheduling.
pub fn brute_force_opt_with_limit<V: Valuation>(
    inst: &Instance<V>,
    exec: Execution,
    limit: u128,
) -> Result<Optimum> {
    let total = inst.actions().profile_count();
    if total > limit {
        return Err(Error::guard(
            "exhaustive optimum",
            limit.min(u64::MAX as u128) as u64,
            total.min(u64::MAX as u128) as u64,
        ));
    }
    let total = total as usize;
    let sizes: Vec<usize> = inst.actions().iter().map(<[_]>::len).collect();
    let chunks = total.div_ceil(CHUNK);
    let best_per_chunk = map_range(exec, 0..chunks, |c| {
        let mut best: Option<(Rational, usize)> = None;
        for index in c * CHUNK..((c + 1) * CHUNK).min(total) {
            let value = inst.profile_value(&decode(&sizes, index));
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                best = Some((value, index));
            }
        }
        best
    });
    let (value, index) = best_per_chunk
        .into_iter()
        .flatten()
        .fold(None, |acc: Option<(Rational, usize)>, cand| match acc {
            Some(a) if a.0 >= cand.0 => Some(a),
            _ => Some(cand),
        })
        .expect("at least one profile");
    Ok(Optimum {
        value,
        profile: decode(&sizes, index),
    })
}

/// Worst-case greedy value divided by the optimum.
pub fn efficiency<V: Valuation>(inst: &Instance<V>, g: &InfoGraph, exec: Execution) -> Result<EfficiencyReport> {
    efficiency_with_limits(inst, g, exec, BRANCH_LIMIT, OPT_LIMIT)
}

pub fn efficiency_with_limits<V: Valuation>(
    inst: &Instance<V>,
    g: &InfoGraph,
    exec: Execution,
    branch_limit: u64,
    opt_limit: u128,
) -> Result<EfficiencyReport> {
    let sol = run_generalized_greedy_with_limit(inst, g, TiePolicy::WorstCase, branch_limit)?;
    let opt = brute_force_opt_with_limit(inst, exec, opt_limit)?;
    if opt.value.is_zero() {
        return Err(Error::Degenerate(
            "the optimal value is 0, so efficiency is undefined".into(),
        ));
    }
    Ok(EfficiencyReport {
        gamma: sol.value / opt.value,
        opt_value: opt.value,
        sol_value: sol.value,
        opt_profile: opt.profile,
        sol_profile: sol.profile,
        branches_explored: sol.branches_explored,
    })
}

/// On a complete graph, checks `Σ_i Δ(x_i | x_1 ∪ … ∪ x_{i-1}) = f(x)` for
/// each given profile.
pub fn clique_marginal_identity_check<V: Valuation>(
    inst: &Instance<V>,
    g: &InfoGraph,
    profiles: &[Vec<usize>],
) -> Result<bool> {
    if !g.is_complete() {
        return Err(Error::input("the telescoping identity needs a complete graph"));
    }
    if g.n() != inst.n() {
        return Err(Error::input("instance and graph sizes differ"));
    }
    for profile in profiles {
        if profile.len() != inst.n()
            || profile
                .iter()
                .enumerate()
                .any(|(i, &k)| k >= inst.actions().of(i).len())
        {
            return Err(Error::input(format!("profile {profile:?} is not a valid action choice")));
        }
        let mut prefix = crate::submodular::ElementSet::empty();
        let mut total = Rational::zero();
        for (i, &k) in profile.iter().enumerate() {
            let action = inst.actions().of(i)[k];
            total += inst.oracle().gain(action, prefix);
            prefix = prefix.union(action);
        }
        if total != inst.oracle().value(prefix) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Uniformly sampled action profiles, reproducible by seed.
pub fn sample_profiles<V: Valuation>(inst: &Instance<V>, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            inst.actions()
                .iter()
                .map(|x| rng.random_range(0..x.len()))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;
    use crate::rational::{int, rat};
    use crate::submodular::{ActionSets, ElementSet, WeightedCoverage};

    fn coverage() -> Instance<WeightedCoverage> {
        let f = WeightedCoverage::from_values(&[int(2), int(1), int(3), int(3), int(1)]).unwrap();
        let s = ElementSet::singleton;
        Instance::new(
            f,
            ActionSets::new(vec![
                vec![s(0), s(2)],
                vec![s(1), s(2)],
                vec![s(3), s(4)],
                vec![s(3), s(4)],
            ])
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn optimum_and_efficiency() {
        let inst = coverage();
        let opt = brute_force_opt(&inst, Execution::Parallel).unwrap();
        assert_eq!(opt.value, int(9));
        assert_eq!(opt.profile, vec![0, 1, 0, 1]);
        let report = efficiency(&inst, &fixtures::four_agents(), Execution::Sequential).unwrap();
        assert_eq!(report.gamma, rat(6, 9));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let inst = coverage();
        assert_eq!(
            brute_force_opt(&inst, Execution::Sequential).unwrap(),
            brute_force_opt(&inst, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn zero_optimum_is_degenerate() {
        let f = WeightedCoverage::from_values(&[int(0)]).unwrap();
        let inst = Instance::new(f, ActionSets::new(vec![vec![ElementSet::singleton(0)]]).unwrap()).unwrap();
        let err = efficiency(&inst, &InfoGraph::edgeless(1), Execution::Sequential).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
    }

    #[test]
    fn guard_refuses_large_products() {
        let inst = coverage();
        let err = brute_force_opt_with_limit(&inst, Execution::Sequential, 15).unwrap_err();
        assert!(matches!(err, Error::Guard { limit: 15, actual: 16, .. }));
    }

    #[test]
    fn telescoping_identity() {
        let inst = coverage();
        let g = InfoGraph::complete(4);
        assert!(clique_marginal_identity_check(&inst, &g, &[vec![1, 0, 0, 1]]).unwrap());
        assert_eq!(inst.profile_value(&[1, 0, 0, 1]), int(8));
        let samples = sample_profiles(&inst, 50, 3);
        assert!(clique_marginal_identity_check(&inst, &g, &samples).unwrap());
        assert!(clique_marginal_identity_check(&inst, &fixtures::four_agents(), &samples).is_err());
    }
}
