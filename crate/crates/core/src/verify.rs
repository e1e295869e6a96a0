//! Self-check runner behind the `verify` command: replays the committed
//! fixtures and the library's invariant suites, one named outcome per check.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use crate::bounds::{
    adversarial_search, canonical_upper_instance_with, efficiency_bounds, sibling_lower_instance_with, SearchMode,
};
use crate::design::{complement_turan, edge_count_m, efficiency_curve, min_edges_no_sibling, optimal_structure};
use crate::error::{Error, Result};
use crate::graph::{exact_numbers, sibling_property, InfoGraph};
use crate::greedy::{brute_force_opt, efficiency, run_distributed_greedy, run_generalized_greedy, TiePolicy};
use crate::lp::fractional_numbers;
use crate::par::{try_map_range, try_map_slice, Execution};
use crate::rational::{self, int, rat, Rational};
use crate::sample::{random_assignment_instance, random_coverage_instance, random_graph};
use crate::submodular::{audit_properties, parse_instance};

pub const FOUR_AGENTS_GRAPH: &str = include_str!("../fixtures/four_agents.graph.json");
pub const FOUR_AGENTS_INSTANCE: &str = include_str!("../fixtures/four_agents.instance.json");
pub const K4_MINUS_EDGE_GRAPH: &str = include_str!("../fixtures/k4_minus_edge.graph.json");
pub const FIVE_CYCLE_GRAPH: &str = include_str!("../fixtures/five_cycle.graph.json");
pub const SINGLE_EDGE_GRAPH: &str = include_str!("../fixtures/single_edge.graph.json");
pub const SINGLE_EDGE_INSTANCE: &str = include_str!("../fixtures/single_edge.instance.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random cases per property suite.
    pub samples: usize,
    /// Largest `n` for the exhaustive design spot-check.
    pub design_n: usize,
    #[serde(skip)]
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            samples: 500,
            design_n: 5,
            exec: Execution::Parallel,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&VerifyOptions) -> Result<(bool, String)>;

const CHECKS: &[(&str, Check)] = &[
    ("coverage fixture: optimum 9, distributed 8, generalized 6", coverage_fixture),
    ("clique-minus-edge graph: numbers, bounds and search floor", clique_minus_edge),
    ("five-cycle graph: numbers, LP point and sibling witness", five_cycle),
    ("single-edge graph: sibling instance reaches 1/3", single_edge),
    ("random pairs never fall below 1/(α*+1)", lower_floor),
    ("canonical instance realizes 1/α* on random graphs", canonical_realizes_upper),
    ("complete-graph greedy never falls below 1/2", complete_floor),
    ("α ≤ α* = k* ≤ k on every graph with n ≤ 6", duality),
    ("complement Turán edge counts match M(n, r) up to n = 30", turan_counts),
    ("efficiency curve for n = 10", curve_ten),
    ("no graph beats the optimal design (exhaustive, small n)", design_spot_check),
    ("sibling-free witnesses are minimal and correct", sibling_free_witnesses),
];

/// Runs every check. Errors inside a check are reported as failures, never
/// propagated, so one broken suite does not hide the others.
pub fn run_checks(opts: &VerifyOptions) -> Vec<CheckOutcome> {
    (0..CHECKS.len()).map(|i| run_one(i, opts)).collect()
}

/// Runs the check at position `index` of [`check_names`].
pub fn run_one(index: usize, opts: &VerifyOptions) -> CheckOutcome {
    let (name, check) = CHECKS[index];
    let (passed, detail) = check(opts).unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckOutcome { name, passed, detail }
}

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

fn fmt(r: &Rational) -> String {
    rational::format(r)
}

fn coverage_fixture(_: &VerifyOptions) -> Result<(bool, String)> {
    let g = InfoGraph::from_json(FOUR_AGENTS_GRAPH)?;
    let inst = parse_instance(FOUR_AGENTS_INSTANCE)?;
    let opt = brute_force_opt(&inst, Execution::Sequential)?;
    let full = run_distributed_greedy(&inst, TiePolicy::WorstCase)?;
    let partial = run_generalized_greedy(&inst, &g, TiePolicy::WorstCase)?;
    let gamma = partial.value / opt.value;
    let ok = opt.value == int(9) && full.value == int(8) && partial.value == int(6) && gamma == rat(6, 9);
    Ok((
        ok,
        format!(
            "optimum {}, distributed {}, generalized {}, efficiency {}",
            fmt(&opt.value),
            fmt(&full.value),
            fmt(&partial.value),
            fmt(&gamma)
        ),
    ))
}

fn clique_minus_edge(opts: &VerifyOptions) -> Result<(bool, String)> {
    let g = InfoGraph::from_json(K4_MINUS_EDGE_GRAPH)?;
    let exact = exact_numbers(&g)?;
    let frac = fractional_numbers(&g)?;
    let bounds = efficiency_bounds(&g)?;
    let sibling = sibling_property(&g)?;
    let search = adversarial_search(&g, SearchMode::Sampled { budget: opts.samples }, opts.seed, opts.exec)?;
    let ok = (exact.alpha, exact.clique_cover, exact.omega) == (2, 2, 3)
        && frac.alpha_star == int(2)
        && frac.k_star == int(2)
        && bounds.lower == rat(1, 3)
        && bounds.upper == rat(1, 2)
        && !sibling.has_property
        && search.min_gamma == rat(1, 2);
    Ok((
        ok,
        format!(
            "α={} k={} ω={} α*={} k*={} bounds [{}, {}] sibling={} search minimum {} (seed {})",
            exact.alpha,
            exact.clique_cover,
            exact.omega,
            fmt(&frac.alpha_star),
            fmt(&frac.k_star),
            fmt(&bounds.lower),
            fmt(&bounds.upper),
            sibling.has_property,
            fmt(&search.min_gamma),
            opts.seed
        ),
    ))
}

fn five_cycle(_: &VerifyOptions) -> Result<(bool, String)> {
    let g = InfoGraph::from_json(FIVE_CYCLE_GRAPH)?;
    let exact = exact_numbers(&g)?;
    let frac = fractional_numbers(&g)?;
    let sibling = sibling_property(&g)?;
    let half = rat(1, 2);
    let observers: Vec<usize> = sibling.witnesses.iter().map(|w| w.observer + 1).collect();
    let ok = exact.alpha == 2
        && exact.clique_cover == 3
        && frac.alpha_star == rat(5, 2)
        && frac.k_star == rat(5, 2)
        && frac.independence_point.iter().all(|z| *z == half)
        && sibling.has_property
        && observers.contains(&3);
    Ok((
        ok,
        format!(
            "α={} k={} α*={} k*={} point [{}] sibling={} observers {:?}",
            exact.alpha,
            exact.clique_cover,
            fmt(&frac.alpha_star),
            fmt(&frac.k_star),
            frac.independence_point.iter().map(fmt).collect::<Vec<_>>().join(", "),
            sibling.has_property,
            observers
        ),
    ))
}

fn single_edge(opts: &VerifyOptions) -> Result<(bool, String)> {
    let g = InfoGraph::from_json(SINGLE_EDGE_GRAPH)?;
    let built = sibling_lower_instance_with(&g, opts.exec)?;
    let fixture = efficiency(&parse_instance(SINGLE_EDGE_INSTANCE)?, &g, opts.exec)?;
    let alpha_star = fractional_numbers(&g)?.alpha_star;
    let target = Rational::one() / (alpha_star + Rational::one());
    let r = &built.realized;
    let ok = r.opt_value == int(3)
        && r.sol_value == int(1)
        && r.gamma == rat(1, 3)
        && r.gamma == target
        && fixture.gamma == rat(1, 3);
    Ok((
        ok,
        format!(
            "constructed: optimum {}, worst greedy {}, efficiency {} ({}); fixture efficiency {}",
            fmt(&r.opt_value),
            fmt(&r.sol_value),
            fmt(&r.gamma),
            built.detail,
            fmt(&fixture.gamma)
        ),
    ))
}

fn agents_for(k: usize) -> usize {
    k % 6 + 1
}

fn lower_floor(opts: &VerifyOptions) -> Result<(bool, String)> {
    let violations = try_map_range(opts.exec, 0..opts.samples, |k| -> Result<Option<String>> {
        let n = agents_for(k);
        let g = random_graph(n, opts.seed, k as u64);
        let inst = random_coverage_instance(n, 10, opts.seed, k as u64)?;
        let floor = efficiency_bounds(&g)?.lower;
        let gamma = efficiency(&inst, &g, Execution::Sequential)?.gamma;
        Ok((gamma < floor).then(|| format!("case {k}: {} < {}", fmt(&gamma), fmt(&floor))))
    })?;
    let bad: Vec<String> = violations.into_iter().flatten().collect();
    Ok((
        bad.is_empty(),
        format!("{} pairs, {} violations (seed {}) {}", opts.samples, bad.len(), opts.seed, bad.join("; ")),
    ))
}

fn canonical_realizes_upper(opts: &VerifyOptions) -> Result<(bool, String)> {
    let misses = try_map_range(opts.exec, 0..opts.samples, |k| -> Result<Option<String>> {
        let g = random_graph(agents_for(k), opts.seed, k as u64);
        let built = canonical_upper_instance_with(&g, Execution::Sequential)?;
        Ok((!built.certified()).then(|| {
            format!(
                "{:?}: predicted {}, realized {}",
                g.edges().map(|(a, b)| (a + 1, b + 1)).collect::<Vec<_>>(),
                fmt(&built.predicted_gamma),
                fmt(&built.realized.gamma)
            )
        }))
    })?;
    let bad: Vec<String> = misses.into_iter().flatten().collect();
    let first = bad.first().cloned().unwrap_or_default();
    Ok((
        bad.is_empty(),
        format!("{} graphs, {} not realized (seed {}) {first}", opts.samples, bad.len(), opts.seed),
    ))
}

fn complete_floor(opts: &VerifyOptions) -> Result<(bool, String)> {
    let outcomes = try_map_range(opts.exec, 0..opts.samples, |k| -> Result<Option<String>> {
        let n = agents_for(k);
        let inst = if k % 2 == 0 {
            random_coverage_instance(n, 10, opts.seed, k as u64)?
        } else {
            random_assignment_instance(n, 12, opts.seed, k as u64)?
        };
        if !audit_properties(inst.oracle())?.passed() {
            return Err(Error::consistency(format!("sampled instance {k} fails the property audit")));
        }
        let gamma = efficiency(&inst, &InfoGraph::complete(n), Execution::Sequential)?.gamma;
        Ok((gamma < rat(1, 2)).then(|| format!("case {k}: {}", fmt(&gamma))))
    })?;
    let bad: Vec<String> = outcomes.into_iter().flatten().collect();
    Ok((
        bad.is_empty(),
        format!("{} audited instances, {} below 1/2 (seed {}) {}", opts.samples, bad.len(), opts.seed, bad.join("; ")),
    ))
}

/// One representative per undirected shadow, over all graphs with `n` agents.
pub fn distinct_shadows(n: usize) -> Result<Vec<InfoGraph>> {
    let mut seen = BTreeMap::new();
    for code in 0..1u64 << InfoGraph::pair_count(n) {
        let g = InfoGraph::from_edge_code(n, code);
        seen.entry(g.shadow_canonical_key()?).or_insert(g);
    }
    Ok(seen.into_values().collect())
}

fn duality(opts: &VerifyOptions) -> Result<(bool, String)> {
    let mut graphs = Vec::new();
    for n in 1..=6 {
        graphs.extend(distinct_shadows(n)?);
    }
    let bad = try_map_slice(opts.exec, &graphs, |g| -> Result<bool> {
        let exact = exact_numbers(g)?;
        let frac = fractional_numbers(g)?;
        Ok(!(int(exact.alpha as i64) <= frac.alpha_star
            && frac.alpha_star == frac.k_star
            && frac.k_star <= int(exact.clique_cover as i64)))
    })?;
    let failures = bad.iter().filter(|&&b| b).count();
    Ok((failures == 0, format!("{} shadow classes, {failures} violations", graphs.len())))
}

fn turan_counts(_: &VerifyOptions) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for n in 1..=30 {
        for r in 1..=n {
            if complement_turan(n, r)?.graph.edge_count() != edge_count_m(n, r)? {
                bad.push((n, r));
            }
        }
    }
    Ok((bad.is_empty(), format!("465 pairs, mismatches {bad:?}")))
}

fn curve_ten(opts: &VerifyOptions) -> Result<(bool, String)> {
    let curve = efficiency_curve(10, opts.exec)?;
    let at = |m: usize| curve[m].gamma;
    let plateau = (12..=19).all(|m| at(m) == rat(1, 4));
    let monotone = curve.windows(2).all(|w| w[0].gamma <= w[1].gamma);
    let ok = plateau && at(20) == rat(1, 3) && at(44) == rat(1, 2) && at(45) == rat(1, 2) && monotone;
    Ok((
        ok,
        format!(
            "γ(12..=19) = 1/4: {plateau}, γ(20) = {}, γ(44) = {}, γ(45) = {}, nondecreasing: {monotone}",
            fmt(&at(20)),
            fmt(&at(44)),
            fmt(&at(45))
        ),
    ))
}

fn design_spot_check(opts: &VerifyOptions) -> Result<(bool, String)> {
    let mut graphs = Vec::new();
    for n in 1..=opts.design_n {
        graphs.extend((0..1u64 << InfoGraph::pair_count(n)).map(|code| InfoGraph::from_edge_code(n, code)));
    }
    let budget = opts.samples.min(100);
    let beats = try_map_slice(opts.exec, &graphs, |g| -> Result<Option<String>> {
        let certified = adversarial_search(g, SearchMode::Sampled { budget }, opts.seed, Execution::Sequential)?.min_gamma;
        let design = optimal_structure(g.n(), g.edge_count())?.gamma_guaranteed;
        Ok((certified > design).then(|| {
            format!(
                "n={} edges {:?}: certified {} > design {}",
                g.n(),
                g.edges().map(|(a, b)| (a + 1, b + 1)).collect::<Vec<_>>(),
                fmt(&certified),
                fmt(&design)
            )
        }))
    })?;
    let bad: Vec<String> = beats.into_iter().flatten().collect();
    Ok((
        bad.is_empty(),
        format!("{} graphs with n ≤ {}, {} exceed the design (seed {}) {}", graphs.len(), opts.design_n, bad.len(), opts.seed, bad.first().cloned().unwrap_or_default()),
    ))
}

fn sibling_free_witnesses(opts: &VerifyOptions) -> Result<(bool, String)> {
    let mut problems = Vec::new();
    for n in 3..=10 {
        for r in 2..n {
            let w = min_edges_no_sibling(n, r)?;
            let expected = edge_count_m(n - r, r - 1)? + 2 * (n - r);
            let exact = exact_numbers(&w.graph)?;
            let sibling = sibling_property(&w.graph)?;
            if w.m_min != expected || w.graph.edge_count() != expected || exact.alpha != r || sibling.has_property {
                problems.push(format!("({n}, {r})"));
            }
        }
    }
    // Smallest sibling-free graph for each (n, α), by exhaustive enumeration.
    for n in 3..=6 {
        let graphs: Vec<InfoGraph> = (0..1u64 << InfoGraph::pair_count(n))
            .map(|code| InfoGraph::from_edge_code(n, code))
            .collect();
        let found = try_map_slice(opts.exec, &graphs, |g| -> Result<Option<(usize, usize)>> {
            if sibling_property(g)?.has_property {
                return Ok(None);
            }
            Ok(Some((exact_numbers(g)?.alpha, g.edge_count())))
        })?;
        let mut best: BTreeMap<usize, usize> = BTreeMap::new();
        for (alpha, m) in found.into_iter().flatten() {
            let e = best.entry(alpha).or_insert(m);
            *e = (*e).min(m);
        }
        for r in 2..n {
            let m_min = min_edges_no_sibling(n, r)?.m_min;
            if best.get(&r) != Some(&m_min) {
                problems.push(format!("exhaustive ({n}, {r}): found {:?}, constructed {m_min}", best.get(&r)));
            }
        }
    }
    Ok((problems.is_empty(), format!("n ≤ 10 constructed, n ≤ 6 exhaustive; problems {problems:?}")))
}
