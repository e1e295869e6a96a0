//! Seeded random graphs and instances for property suites and benchmarks.
//!
//! Every generator takes `(seed, index)` and draws from its own ChaCha stream,
//! so item `k` is the same no matter how a batch is scheduled.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::InfoGraph;
use crate::rational::{rat, Rational};
use crate::submodular::{
    ActionSets, ElementSet, Instance, Oracle, TargetAssignment, TargetAssignmentSpec, WeightedCoverage,
};

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform admissible graph on `n` agents: every forward edge present with probability 1/2.
pub fn random_graph(n: usize, seed: u64, index: u64) -> InfoGraph {
    let mut rng = stream(seed, index);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|b| (0..b).map(move |a| (a, b)))
        .filter(|_| rng.random_bool(0.5))
        .collect();
    InfoGraph::new(n, &edges).expect("forward edges are admissible")
}

fn random_family(rng: &mut ChaCha8Rng, universe: usize, max_actions: usize, max_size: usize) -> Vec<Vec<usize>> {
    let count = rng.random_range(1..=max_actions);
    (0..count)
        .map(|_| {
            let size = rng.random_range(1..=max_size.min(universe));
            let mut picked = sample(rng, universe, size).into_vec();
            picked.sort_unstable();
            picked
        })
        .collect()
}

/// Weighted coverage instance with at most `max_targets` targets, positive
/// integer values up to 5, and up to three actions of up to three targets per agent.
pub fn random_coverage_instance(n: usize, max_targets: usize, seed: u64, index: u64) -> Result<Instance> {
    let mut rng = stream(seed, index);
    let targets = rng.random_range(1..=max_targets.max(1));
    let values: Vec<Rational> = (0..targets).map(|_| rat(rng.random_range(1..=5), 1)).collect();
    let actions = (0..n)
        .map(|_| {
            random_family(&mut rng, targets, 3, 3)
                .into_iter()
                .map(|a| a.into_iter().collect())
                .collect()
        })
        .collect();
    Instance::new(
        Oracle::Wsc(WeightedCoverage::from_values(&values)?),
        ActionSets::new(actions)?,
    )
}

const PROBS: [(i64, i64); 6] = [(1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1)];

/// Target assignment instance whose agent × target ground set has at most
/// `max_ground` elements.
pub fn random_assignment_instance(n: usize, max_ground: usize, seed: u64, index: u64) -> Result<Instance> {
    let mut rng = stream(seed, index);
    let targets = rng.random_range(1..=(max_ground / n.max(1)).max(1));
    let values: Vec<Rational> = (0..targets).map(|_| rat(rng.random_range(1..=5), 1)).collect();
    let probs: Vec<Rational> = (0..n)
        .map(|_| {
            let (p, q) = PROBS[rng.random_range(0..PROBS.len())];
            rat(p, q)
        })
        .collect();
    let f = TargetAssignment::new(TargetAssignmentSpec {
        target_values: values,
        success_probs: probs,
    })?;
    let mut families = Vec::with_capacity(n);
    for agent in 0..n {
        let family = random_family(&mut rng, targets, 3, 2)
            .iter()
            .map(|a| f.assignment(agent, a))
            .collect::<Result<Vec<ElementSet>>>()?;
        families.push(family);
    }
    Instance::new(Oracle::Vta(f), ActionSets::new(families)?)
}
