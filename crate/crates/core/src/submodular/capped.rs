use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{maximal_cliques, InfoGraph};
use crate::rational::{self, Rational};

use super::{ElementSet, Valuation};

/// `f(A) = min(1, Σ_{u_i ∈ A} w_i) + Σ_{v_i ∈ A} w_i` over `S = {u_1..u_n, v_1..v_n}`.
///
/// Element `i` is `u_i` and element `n + i` is `v_i`. The `u` half saturates at
/// one, the `v` half is modular.
#[derive(Clone, Debug, PartialEq)]
pub struct CappedSum {
    weights: Vec<Rational>,
}

impl CappedSum {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if 2 * weights.len() > ElementSet::CAPACITY {
            return Err(Error::input(format!(
                "{} weights exceed the supported ground set size",
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| !rational::is_nonnegative(w)) {
            return Err(Error::input(format!(
                "weight at /weights/{i} is negative ({})",
                rational::format(&weights[i])
            )));
        }
        Ok(CappedSum { weights })
    }

    /// Builds the oracle for `g`, requiring the weights of every clique to sum
    /// to at most one so that agents in a clique never saturate the cap.
    pub fn for_graph(weights: Vec<Rational>, g: &InfoGraph) -> Result<Self> {
        if weights.len() != g.n() {
            return Err(Error::input(format!(
                "{} weights for a graph with {} agents",
                weights.len(),
                g.n()
            )));
        }
        let f = Self::new(weights)?;
        for clique in maximal_cliques(g) {
            let total: Rational = clique.iter().map(|&i| f.weights[i]).sum();
            if total > Rational::one() {
                let labels: Vec<String> = clique.iter().map(|i| (i + 1).to_string()).collect();
                return Err(Error::input(format!(
                    "weights on clique {{{}}} sum to {} > 1",
                    labels.join(", "),
                    rational::format(&total)
                )));
            }
        }
        Ok(f)
    }

    pub fn agents(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn u(&self, agent: usize) -> usize {
        agent
    }

    pub fn v(&self, agent: usize) -> usize {
        self.weights.len() + agent
    }
}

impl Valuation for CappedSum {
    fn ground_size(&self) -> usize {
        2 * self.weights.len()
    }

    fn value(&self, set: ElementSet) -> Rational {
        let n = self.weights.len();
        let mut capped = Rational::zero();
        let mut free = Rational::zero();
        for e in set.iter() {
            if e < n {
                capped += self.weights[e];
            } else {
                free += self.weights[e - n];
            }
        }
        capped.min(Rational::one()) + free
    }
}
