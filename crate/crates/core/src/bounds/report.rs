use num_traits::One;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{exact_numbers, sibling_property, GraphFile, InfoGraph};
use crate::lp::fractional_numbers;
use crate::rational::{self, Rational};

/// Bracket on the worst-case efficiency of greedy over a graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    /// `1 / (α* + 1)`: no instance does worse.
    #[serde(with = "rational::as_string")]
    pub lower: Rational,
    /// `1 / α*`: some instance does at least this badly.
    #[serde(with = "rational::as_string")]
    pub upper: Rational,
    #[serde(with = "rational::as_string")]
    pub alpha_star: Rational,
    pub alpha: usize,
    pub clique_cover: usize,
    /// `1 / (1 + α)`, attained by an instance whenever the Sibling Property holds.
    #[serde(with = "rational::option_as_string")]
    pub sibling_upper: Option<Rational>,
    /// The worst case equals `lower` for this graph.
    pub lower_tight: bool,
    /// The worst case equals `upper` for this graph.
    pub upper_tight: bool,
}

impl BoundsReport {
    /// Smallest efficiency known to be attainable on this graph.
    pub fn best_attainable(&self) -> Rational {
        match self.sibling_upper {
            Some(s) if s < self.upper => s,
            _ => self.upper,
        }
    }
}

/// True for the complete graph minus the edge between the last two agents.
pub(crate) fn is_clique_minus_last_edge(g: &InfoGraph) -> bool {
    let n = g.n();
    n >= 2 && g.edge_count() + 1 == InfoGraph::pair_count(n) && !g.has_edge(n - 2, n - 1)
}

pub fn efficiency_bounds(g: &InfoGraph) -> Result<BoundsReport> {
    let numbers = exact_numbers(g)?;
    let fractional = fractional_numbers(g)?;
    let sibling = sibling_property(g)?;
    let alpha_star = fractional.alpha_star;
    let one = Rational::one();
    let sibling_upper = sibling
        .has_property
        .then(|| one / Rational::from_integer(numbers.alpha as i64 + 1));
    Ok(BoundsReport {
        lower: one / (alpha_star + one),
        upper: one / alpha_star,
        alpha_star,
        alpha: numbers.alpha,
        clique_cover: numbers.clique_cover,
        sibling_upper,
        lower_tight: sibling.has_property && numbers.alpha == numbers.clique_cover,
        upper_tight: g.edge_count() == 0 || is_clique_minus_last_edge(g),
    })
}

/// Sibling witness in 1-based labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelledWitness {
    pub independent_set: Vec<usize>,
    pub observed: usize,
    pub observer: usize,
    pub clean: bool,
}

/// Everything `analyze` reports about a graph. Agent labels are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphAnalysis {
    pub graph: GraphFile,
    pub alpha: usize,
    pub clique_cover: usize,
    pub omega: usize,
    #[serde(with = "rational::as_string")]
    pub alpha_star: Rational,
    #[serde(with = "rational::as_string")]
    pub k_star: Rational,
    #[serde(with = "rational::vec_as_string")]
    pub independence_point: Vec<Rational>,
    pub maximal_cliques: Vec<Vec<usize>>,
    pub max_independent_sets: Vec<Vec<usize>>,
    pub min_clique_cover: Vec<Vec<usize>>,
    pub sibling: bool,
    pub sibling_witnesses: Vec<LabelledWitness>,
    pub bounds: BoundsReport,
}

fn labelled(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().map(|v| v + 1).collect()).collect()
}

pub fn analyze_graph(g: &InfoGraph) -> Result<GraphAnalysis> {
    let numbers = exact_numbers(g)?;
    let fractional = fractional_numbers(g)?;
    let sibling = sibling_property(g)?;
    let bounds = efficiency_bounds(g)?;
    Ok(GraphAnalysis {
        graph: GraphFile::from(g),
        alpha: numbers.alpha,
        clique_cover: numbers.clique_cover,
        omega: numbers.omega,
        alpha_star: fractional.alpha_star,
        k_star: fractional.k_star,
        independence_point: fractional.independence_point,
        maximal_cliques: labelled(&fractional.cliques),
        max_independent_sets: labelled(&numbers.max_independent_sets),
        min_clique_cover: labelled(&numbers.min_clique_cover),
        sibling: sibling.has_property,
        sibling_witnesses: sibling
            .witnesses
            .iter()
            .map(|w| LabelledWitness {
                independent_set: w.independent_set.iter().map(|v| v + 1).collect(),
                observed: w.observed + 1,
                observer: w.observer + 1,
                clean: w.clean,
            })
            .collect(),
        bounds,
    })
}
