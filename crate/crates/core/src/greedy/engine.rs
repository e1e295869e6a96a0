use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{mask_to_vec, InfoGraph};
use crate::rational::{self, Rational};
use crate::submodular::{ElementSet, Instance, Valuation};

/// Default cap on worst-case search nodes before refusing.
pub const BRANCH_LIMIT: u64 = 1_000_000;

/// How an agent picks among equally good actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "policy", content = "seed", rename_all = "snake_case")]
pub enum TiePolicy {
    /// Explore every tie and report the worst resulting value.
    WorstCase,
    FirstIndex,
    SeededRandom(u64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AgentStep {
    pub agent: usize,
    /// Agents whose decisions this agent saw.
    pub observed: Vec<usize>,
    /// Marginal value of each action given the observed decisions.
    #[serde(with = "rational::vec_as_string")]
    pub gains: Vec<Rational>,
    /// Indices of the maximizing actions.
    pub argmax: Vec<usize>,
    pub chosen: usize,
    pub chosen_elements: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreedyOutcome {
    pub policy: TiePolicy,
    /// Index into `X_i` of each agent's action.
    pub profile: Vec<usize>,
    #[serde(with = "rational::as_string")]
    pub value: Rational,
    /// Search nodes expanded (1 per agent for the single-path policies).
    pub branches_explored: u64,
    pub trace: Vec<AgentStep>,
}

fn check_dims<V: Valuation>(inst: &Instance<V>, g: &InfoGraph) -> Result<()> {
    if inst.n() != g.n() {
        return Err(Error::input(format!(
            "instance has {} agents but the graph has {}",
            inst.n(),
            g.n()
        )));
    }
    Ok(())
}

fn observed_union<V: Valuation>(
    inst: &Instance<V>,
    g: &InfoGraph,
    agent: usize,
    choices: &[usize],
) -> ElementSet {
    mask_to_vec(g.in_mask(agent))
        .into_iter()
        .fold(ElementSet::empty(), |acc, j| acc.union(inst.actions().of(j)[choices[j]]))
}

/// Marginal gains of every action of `agent` and the indices attaining the maximum.
fn best_responses<V: Valuation>(
    inst: &Instance<V>,
    agent: usize,
    base: ElementSet,
) -> (Vec<Rational>, Vec<usize>) {
    let gains: Vec<Rational> = inst
        .actions()
        .of(agent)
        .iter()
        .map(|&a| inst.oracle().gain(a, base))
        .collect();
    let best = *gains.iter().max().expect("action sets are nonempty");
    let argmax = (0..gains.len()).filter(|&k| gains[k] == best).collect();
    (gains, argmax)
}

/// Re-runs the decision sequence for a fixed profile and records each step.
pub fn replay<V: Valuation>(inst: &Instance<V>, g: &InfoGraph, profile: &[usize]) -> Result<Vec<AgentStep>> {
    check_dims(inst, g)?;
    if profile.len() != inst.n() {
        return Err(Error::input("profile length differs from the agent count"));
    }
    Ok((0..inst.n())
        .map(|i| {
            let (gains, argmax) = best_responses(inst, i, observed_union(inst, g, i, profile));
            AgentStep {
                agent: i,
                observed: g.in_neighbors(i),
                gains,
                argmax,
                chosen: profile[i],
                chosen_elements: inst.actions().of(i)[profile[i]].to_vec(),
            }
        })
        .collect())
}

/// True when every agent's action is a best response to what it observes,
/// i.e. the profile is a possible outcome of the greedy rule.
pub fn is_greedy_profile<V: Valuation>(inst: &Instance<V>, g: &InfoGraph, profile: &[usize]) -> Result<bool> {
    Ok(replay(inst, g, profile)?
        .iter()
        .all(|step| step.argmax.contains(&step.chosen)))
}

pub fn run_generalized_greedy<V: Valuation>(
    inst: &Instance<V>,
    g: &InfoGraph,
    policy: TiePolicy,
) -> Result<GreedyOutcome> {
    run_generalized_greedy_with_limit(inst, g, policy, BRANCH_LIMIT)
}

/// Agents decide in index order, each maximizing `f(x_i ∪ x_{N_i})` over its
/// action set given the observed decisions of its in-neighbours.
pub fn run_generalized_greedy_with_limit<V: Valuation>(
    inst: &Instance<V>,
    g: &InfoGraph,
    policy: TiePolicy,
    branch_limit: u64,
) -> Result<GreedyOutcome> {
    check_dims(inst, g)?;
    let (profile, branches) = match policy {
        TiePolicy::WorstCase => {
            let mut search = WorstCase::new(inst, g, branch_limit);
            let mut choices = Vec::with_capacity(inst.n());
            let (_, suffix) = search.visit(0, ElementSet::empty(), &mut choices)?;
            (suffix, search.expanded)
        }
        TiePolicy::FirstIndex => (single_path(inst, g, |argmax| argmax[0]), inst.n() as u64),
        TiePolicy::SeededRandom(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let profile = single_path(inst, g, |argmax| argmax[rng.random_range(0..argmax.len())]);
            (profile, inst.n() as u64)
        }
    };
    let trace = replay(inst, g, &profile)?;
    Ok(GreedyOutcome {
        policy,
        value: inst.profile_value(&profile),
        profile,
        branches_explored: branches,
        trace,
    })
}

/// Greedy with full information: every agent sees all predecessors.
pub fn run_distributed_greedy<V: Valuation>(inst: &Instance<V>, policy: TiePolicy) -> Result<GreedyOutcome> {
    run_generalized_greedy(inst, &InfoGraph::complete(inst.n()), policy)
}

fn single_path<V: Valuation>(
    inst: &Instance<V>,
    g: &InfoGraph,
    mut pick: impl FnMut(&[usize]) -> usize,
) -> Vec<usize> {
    let mut choices = Vec::with_capacity(inst.n());
    for i in 0..inst.n() {
        let (_, argmax) = best_responses(inst, i, observed_union(inst, g, i, &choices));
        choices.push(pick(&argmax));
    }
    choices
}

/// Every profile the greedy rule can produce under some tie-breaking, in
/// lexicographic order. Refuses once more than `limit` profiles exist.
pub fn candidate_solutions<V: Valuation>(
    inst: &Instance<V>,
    g: &InfoGraph,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    check_dims(inst, g)?;
    fn walk<V: Valuation>(
        inst: &Instance<V>,
        g: &InfoGraph,
        choices: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        let i = choices.len();
        if i == inst.n() {
            if out.len() == limit {
                return Err(Error::guard("candidate solution enumeration", limit as u64, limit as u64 + 1));
            }
            out.push(choices.clone());
            return Ok(());
        }
        let (_, argmax) = best_responses(inst, i, observed_union(inst, g, i, choices));
        for k in argmax {
            choices.push(k);
            walk(inst, g, choices, out, limit)?;
            choices.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(inst, g, &mut Vec::with_capacity(inst.n()), &mut out, limit)?;
    Ok(out)
}

/// Memoized search over all tie branches. Two partial runs at agent `i` behave
/// identically from then on when they agree on the union chosen so far and on
/// the choices of agents that some later agent still observes.
/// (agent, union so far, choices still observed) -> worst value and the choices made.
type Memo = HashMap<(usize, u128, Vec<usize>), (Rational, Vec<usize>)>;

struct WorstCase<'a, V> {
    inst: &'a Instance<V>,
    g: &'a InfoGraph,
    limit: u64,
    expanded: u64,
    memo: Memo,
}

impl<'a, V: Valuation> WorstCase<'a, V> {
    fn new(inst: &'a Instance<V>, g: &'a InfoGraph, limit: u64) -> Self {
        WorstCase {
            inst,
            g,
            limit,
            expanded: 0,
            memo: HashMap::new(),
        }
    }

    fn key(&self, i: usize, union: ElementSet, choices: &[usize]) -> (usize, u128, Vec<usize>) {
        let later = if i >= 64 { 0 } else { !0u64 << i };
        let live = (0..i)
            .filter(|&j| self.g.out_mask(j) & later != 0)
            .map(|j| choices[j])
            .collect();
        (i, union.bits(), live)
    }

    /// Minimum final value over all greedy completions, with the completing suffix.
    fn visit(
        &mut self,
        i: usize,
        union: ElementSet,
        choices: &mut Vec<usize>,
    ) -> Result<(Rational, Vec<usize>)> {
        if i == self.inst.n() {
            return Ok((self.inst.oracle().value(union), Vec::new()));
        }
        let key = self.key(i, union, choices);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        self.expanded += 1;
        if self.expanded > self.limit {
            return Err(Error::guard(
                "worst-case tie enumeration",
                self.limit,
                self.expanded,
            ));
        }
        let base = observed_union(self.inst, self.g, i, choices);
        let (_, argmax) = best_responses(self.inst, i, base);
        let mut best: Option<(Rational, Vec<usize>)> = None;
        for k in argmax {
            choices.push(k);
            let next = union.union(self.inst.actions().of(i)[k]);
            let (value, suffix) = self.visit(i + 1, next, choices)?;
            choices.pop();
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                let mut path = Vec::with_capacity(suffix.len() + 1);
                path.push(k);
                path.extend(suffix);
                best = Some((value, path));
            }
        }
        let best = best.expect("argmax is nonempty");
        self.memo.insert(key, best.clone());
        Ok(best)
    }
}
