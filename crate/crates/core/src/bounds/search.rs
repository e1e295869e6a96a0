use num_traits::One;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::InfoGraph;
use crate::greedy::{candidate_solutions, efficiency, efficiency_with_limits, BRANCH_LIMIT, OPT_LIMIT};
use crate::par::{try_map_range, Execution};
use crate::rational::{self, int, Rational};
use crate::submodular::{ActionSets, ElementSet, Instance, InstanceFile, Oracle, WeightedCoverage};

use super::construct::require_agents;
use super::{canonical_upper_instance_with, sibling_lower_instance_with, efficiency_bounds};

/// Largest value a generated target may carry.
pub const MAX_TARGET_VALUE: u8 = 3;
/// Largest action set a generated agent may have.
pub const MAX_ACTIONS: usize = 3;
/// Cap on the number of instances an exhaustive search will enumerate.
pub const EXHAUSTIVE_LIMIT: u64 = 5_000_000;

/// The searched family: coverage instances where every action is a single
/// target, with at most `n + 2` targets, target values in `0..=3` and at most
/// three actions per agent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SearchMode {
    /// `budget` random instances; instance `k` draws from its own seeded stream.
    Sampled { budget: usize },
    /// Every instance with exactly `targets` targets and values in `0..=max_value`.
    Exhaustive { targets: usize, max_value: u8 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchResult {
    #[serde(with = "rational::as_string")]
    pub min_gamma: Rational,
    /// Where the minimizing instance came from.
    pub witness_source: String,
    #[serde(serialize_with = "instance_as_file")]
    pub witness: Instance,
    /// Instances with a positive optimum that were evaluated.
    pub evaluated: u64,
    /// Instances skipped because their optimum is 0.
    pub degenerate: u64,
    #[serde(with = "rational::as_string")]
    pub lower: Rational,
    #[serde(with = "rational::as_string")]
    pub upper: Rational,
    pub seed: u64,
}

fn instance_as_file<S: Serializer>(inst: &Instance, s: S) -> std::result::Result<S::Ok, S::Error> {
    InstanceFile::from(inst).serialize(s)
}

fn wsc_instance(values: &[u8], actions: Vec<Vec<usize>>) -> Result<Instance> {
    let values: Vec<Rational> = values.iter().map(|&v| int(v as i64)).collect();
    let actions = actions
        .into_iter()
        .map(|family| family.into_iter().map(ElementSet::singleton).collect())
        .collect();
    Instance::new(
        Oracle::Wsc(WeightedCoverage::from_values(&values)?),
        ActionSets::new(actions)?,
    )
}

/// Random member of the search family, a pure function of `(seed, index)`.
pub fn sample_instance(n: usize, seed: u64, index: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let targets = rng.random_range(1..=n + 2);
    let values: Vec<u8> = (0..targets)
        .map(|_| rng.random_range(0..=MAX_TARGET_VALUE))
        .collect();
    let actions = (0..n)
        .map(|_| {
            let size = rng.random_range(1..=MAX_ACTIONS.min(targets));
            sample(&mut rng, targets, size).into_vec()
        })
        .collect();
    wsc_instance(&values, actions)
}

/// Every action family of at most [`MAX_ACTIONS`] distinct targets out of `targets`.
fn families(targets: usize) -> Vec<Vec<usize>> {
    (1u32..1 << targets)
        .filter(|m| m.count_ones() as usize <= MAX_ACTIONS)
        .map(|m| (0..targets).filter(|t| m >> t & 1 == 1).collect())
        .collect()
}

enum Outcome {
    Gamma(Rational),
    Degenerate,
}

fn evaluate(inst: &Instance, g: &InfoGraph) -> Result<Outcome> {
    match efficiency_with_limits(inst, g, Execution::Sequential, BRANCH_LIMIT, OPT_LIMIT) {
        Ok(report) => Ok(Outcome::Gamma(report.gamma)),
        Err(Error::Degenerate(_)) => Ok(Outcome::Degenerate),
        Err(e) => Err(e),
    }
}

/// Best (γ, index) in a chunk, then evaluated and all-zero counts.
type ChunkTally = (Option<(Rational, u64)>, u64, u64);

/// Probes the worst-case efficiency of `g` from above: the minimum measured
/// efficiency over the constructed worst-case instances and the search family.
///
/// Deterministic for a given seed regardless of scheduling. Fails with a
/// consistency error if any instance falls below `1/(α* + 1)`.
pub fn adversarial_search(
    g: &InfoGraph,
    mode: SearchMode,
    seed: u64,
    exec: Execution,
) -> Result<SearchResult> {
    require_agents(g)?;
    let n = g.n();
    let bounds = efficiency_bounds(g)?;

    let mut best: Option<(Rational, String, Instance)> = None;
    let mut evaluated = 0u64;
    let mut degenerate = 0u64;
    let mut consider = |gamma: Rational, source: String, inst: &dyn Fn() -> Result<Instance>| -> Result<()> {
        if gamma < bounds.lower {
            return Err(Error::consistency(format!(
                "{source} has efficiency {} below the floor {}",
                rational::format(&gamma),
                rational::format(&bounds.lower)
            )));
        }
        if best.as_ref().is_none_or(|(b, _, _)| gamma < *b) {
            best = Some((gamma, source, inst()?));
        }
        Ok(())
    };

    let canonical = canonical_upper_instance_with(g, exec)?;
    evaluated += 1;
    consider(canonical.realized.gamma, "canonical capped-sum instance".into(), &|| {
        Ok(canonical.instance.clone())
    })?;
    if bounds.sibling_upper.is_some() {
        let sibling = sibling_lower_instance_with(g, exec)?;
        evaluated += 1;
        consider(sibling.realized.gamma, "sibling coverage instance".into(), &|| {
            Ok(sibling.instance.clone())
        })?;
    }

    match mode {
        SearchMode::Sampled { budget } => {
            let outcomes = try_map_range(exec, 0..budget, |k| {
                evaluate(&sample_instance(n, seed, k as u64)?, g)
            })?;
            for (k, outcome) in outcomes.into_iter().enumerate() {
                match outcome {
                    Outcome::Degenerate => degenerate += 1,
                    Outcome::Gamma(gamma) => {
                        evaluated += 1;
                        consider(gamma, format!("sampled instance {k}"), &|| {
                            sample_instance(n, seed, k as u64)
                        })?;
                    }
                }
            }
        }
        SearchMode::Exhaustive { targets, max_value } => {
            if targets == 0 || targets > n + 2 {
                return Err(Error::input(format!(
                    "exhaustive search needs 1..={} targets",
                    n + 2
                )));
            }
            if max_value > MAX_TARGET_VALUE {
                return Err(Error::input(format!(
                    "target values are limited to 0..={MAX_TARGET_VALUE}"
                )));
            }
            let fams = families(targets);
            let value_count = (max_value as u64 + 1).pow(targets as u32);
            let total = (fams.len() as u64)
                .checked_pow(n as u32)
                .and_then(|a| a.checked_mul(value_count))
                .unwrap_or(u64::MAX);
            if total > EXHAUSTIVE_LIMIT {
                return Err(Error::guard("exhaustive instance search", EXHAUSTIVE_LIMIT, total));
            }
            let decode = |mut index: u64| -> (Vec<u8>, Vec<Vec<usize>>) {
                let mut actions = vec![Vec::new(); n];
                for slot in actions.iter_mut().rev() {
                    *slot = fams[(index % fams.len() as u64) as usize].clone();
                    index /= fams.len() as u64;
                }
                let mut values = vec![0u8; targets];
                for v in values.iter_mut().rev() {
                    *v = (index % (max_value as u64 + 1)) as u8;
                    index /= max_value as u64 + 1;
                }
                (values, actions)
            };
            const CHUNK: u64 = 1024;
            let chunks = total.div_ceil(CHUNK) as usize;
            let per_chunk = try_map_range(exec, 0..chunks, |c| -> Result<ChunkTally> {
                let mut local: Option<(Rational, u64)> = None;
                let (mut ok, mut zero) = (0u64, 0u64);
                for index in c as u64 * CHUNK..((c as u64 + 1) * CHUNK).min(total) {
                    let (values, actions) = decode(index);
                    if values.iter().all(|&v| v == 0) {
                        zero += 1;
                        continue;
                    }
                    match evaluate(&wsc_instance(&values, actions)?, g)? {
                        Outcome::Degenerate => zero += 1,
                        Outcome::Gamma(gamma) => {
                            ok += 1;
                            if local.as_ref().is_none_or(|(b, _)| gamma < *b) {
                                local = Some((gamma, index));
                            }
                        }
                    }
                }
                Ok((local, ok, zero))
            })?;
            for (local, ok, zero) in per_chunk {
                evaluated += ok;
                degenerate += zero;
                if let Some((gamma, index)) = local {
                    consider(gamma, format!("enumerated instance {index}"), &|| {
                        let (values, actions) = decode(index);
                        wsc_instance(&values, actions)
                    })?;
                }
            }
        }
    }

    let (min_gamma, witness_source, witness) = best.expect("the canonical instance is always evaluated");
    Ok(SearchResult {
        min_gamma,
        witness_source,
        witness,
        evaluated,
        degenerate,
        lower: bounds.lower,
        upper: bounds.upper,
        seed,
    })
}

/// One check of the two-step submodularity chain that bounds greedy on the
/// complete graph minus the last edge.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainCheck {
    pub profile: Vec<usize>,
    #[serde(with = "rational::as_string")]
    pub optimum: Rational,
    /// `f(x_1..x_{n-1}) + f(x_1..x_{n-2}, x_n)`
    #[serde(with = "rational::as_string")]
    pub middle: Rational,
    #[serde(with = "rational::as_string")]
    pub twice_value: Rational,
}

impl ChainCheck {
    pub fn holds(&self) -> bool {
        self.optimum <= self.middle && self.middle <= self.twice_value
    }
}

/// For every candidate greedy solution `x` on the complete graph minus the
/// edge between the last two agents, evaluates
/// `f(x^opt) ≤ f(x_{1:n-1}) + f(x_{1:n-2}, x_n) ≤ 2 f(x)`.
pub fn clique_minus_edge_chain(inst: &Instance, g: &InfoGraph, limit: usize) -> Result<Vec<ChainCheck>> {
    if !super::report::is_clique_minus_last_edge(g) {
        return Err(Error::input(
            "the chain applies to the complete graph minus the edge between the last two agents",
        ));
    }
    let optimum = efficiency(inst, g, Execution::Sequential)
        .map(|r| r.opt_value)
        .or_else(|e| match e {
            Error::Degenerate(_) => Ok(Rational::from_integer(0)),
            other => Err(other),
        })?;
    let n = g.n();
    let two = Rational::one() + Rational::one();
    Ok(candidate_solutions(inst, g, limit)?
        .into_iter()
        .map(|x| {
            let act = |i: usize| inst.actions().of(i)[x[i]];
            let prefix = |k: usize| (0..k).fold(ElementSet::empty(), |acc, i| acc.union(act(i)));
            let f = |s: ElementSet| crate::submodular::Valuation::value(inst.oracle(), s);
            let middle = f(prefix(n - 1)) + f(prefix(n - 2).union(act(n - 1)));
            ChainCheck {
                optimum,
                middle,
                twice_value: two * f(prefix(n)),
                profile: x,
            }
        })
        .collect())
}
