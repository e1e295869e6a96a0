//! Weighted set cover and vehicle–target assignment objectives.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

use super::{ElementSet, Valuation};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedSetCoverSpec {
    #[serde(with = "rational::vec_as_string")]
    pub target_values: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetAssignmentSpec {
    #[serde(with = "rational::vec_as_string")]
    pub target_values: Vec<Rational>,
    #[serde(with = "rational::vec_as_string")]
    pub success_probs: Vec<Rational>,
}

fn check_values(values: &[Rational]) -> Result<()> {
    if values.len() > ElementSet::CAPACITY {
        return Err(Error::input(format!(
            "{} targets exceed the supported ground set size {}",
            values.len(),
            ElementSet::CAPACITY
        )));
    }
    match values.iter().position(|v| !rational::is_nonnegative(v)) {
        Some(t) => Err(Error::input(format!(
            "target value at /values/{t} is negative ({})",
            rational::format(&values[t])
        ))),
        None => Ok(()),
    }
}

/// `f(A) = Σ_{t ∈ A} v_t`, each covered target counted once. Ground set = targets.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedCoverage {
    values: Vec<Rational>,
}

impl WeightedCoverage {
    pub fn new(spec: WeightedSetCoverSpec) -> Result<Self> {
        check_values(&spec.target_values)?;
        Ok(WeightedCoverage {
            values: spec.target_values,
        })
    }

    pub fn from_values(values: &[Rational]) -> Result<Self> {
        Self::new(WeightedSetCoverSpec {
            target_values: values.to_vec(),
        })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

impl Valuation for WeightedCoverage {
    fn ground_size(&self) -> usize {
        self.values.len()
    }

    fn value(&self, set: ElementSet) -> Rational {
        set.iter().map(|t| self.values[t]).sum()
    }
}

/// Vehicle–target assignment:
/// `W(x) = Σ_t v_t (1 - Π_{i : t ∈ x_i} (1 - p_i))`.
///
/// The ground set is agent × target: element `agent * targets + target` means
/// "agent assigned to target", so two agents on one target stay distinct.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetAssignment {
    values: Vec<Rational>,
    probs: Vec<Rational>,
}

impl TargetAssignment {
    pub fn new(spec: TargetAssignmentSpec) -> Result<Self> {
        check_values(&spec.target_values)?;
        if let Some(i) = spec
            .success_probs
            .iter()
            .position(|p| !rational::is_nonnegative(p) || *p > Rational::one())
        {
            return Err(Error::input(format!(
                "success probability at /probs/{i} is outside [0, 1] ({})",
                rational::format(&spec.success_probs[i])
            )));
        }
        let ground = spec.target_values.len() * spec.success_probs.len();
        if ground > ElementSet::CAPACITY {
            return Err(Error::input(format!(
                "agent-target ground set of size {ground} exceeds {}",
                ElementSet::CAPACITY
            )));
        }
        Ok(TargetAssignment {
            values: spec.target_values,
            probs: spec.success_probs,
        })
    }

    pub fn agents(&self) -> usize {
        self.probs.len()
    }

    pub fn targets(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn element(&self, agent: usize, target: usize) -> usize {
        agent * self.targets() + target
    }

    /// Splits a ground element back into `(agent, target)`.
    pub fn decode(&self, element: usize) -> (usize, usize) {
        (element / self.targets(), element % self.targets())
    }

    /// Encodes "agent covers these targets" as a subset of the ground set.
    pub fn assignment(&self, agent: usize, targets: &[usize]) -> Result<ElementSet> {
        if agent >= self.agents() {
            return Err(Error::input(format!(
                "agent {agent} out of range for {} agents",
                self.agents()
            )));
        }
        let mut set = ElementSet::empty();
        for &t in targets {
            if t >= self.targets() {
                return Err(Error::input(format!(
                    "target {t} out of range for {} targets",
                    self.targets()
                )));
            }
            set.insert(self.element(agent, t));
        }
        Ok(set)
    }

    /// The set of targets touched by `set`, discarding which agent covers them.
    pub fn covered_targets(&self, set: ElementSet) -> ElementSet {
        set.iter().map(|e| self.decode(e).1).collect()
    }
}

impl Valuation for TargetAssignment {
    fn ground_size(&self) -> usize {
        self.values.len() * self.probs.len()
    }

    fn value(&self, set: ElementSet) -> Rational {
        let targets = self.targets();
        let mut miss = vec![Rational::one(); targets];
        let mut hit = vec![false; targets];
        for e in set.iter() {
            let (agent, t) = (e / targets, e % targets);
            miss[t] *= Rational::one() - self.probs[agent];
            hit[t] = true;
        }
        (0..targets)
            .filter(|&t| hit[t])
            .map(|t| self.values[t] * (Rational::one() - miss[t]))
            .fold(Rational::zero(), |acc, v| acc + v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn example_values() -> Vec<Rational> {
        [2, 1, 3, 3, 1].into_iter().map(int).collect()
    }

    #[test]
    fn wsc_sums_covered_targets() {
        let f = WeightedCoverage::from_values(&[int(1), int(1), int(1)]).unwrap();
        assert_eq!(f.value([0, 1].into_iter().collect()), int(2));
        assert_eq!(f.value(ElementSet::singleton(1)), int(1));
        assert_eq!(f.value(ElementSet::empty()), int(0));

        let g = WeightedCoverage::from_values(&example_values()).unwrap();
        assert_eq!(g.value([0, 2, 3, 4].into_iter().collect()), int(9));
        assert_eq!(g.value([2, 3].into_iter().collect()), int(6));
    }

    #[test]
    fn wsc_rejects_negative_values() {
        let err = WeightedCoverage::from_values(&[int(1), int(-1)]).unwrap_err();
        assert!(err.to_string().contains("/values/1"));
    }

    #[test]
    fn vta_product_rule() {
        // Two agents p = 1/2 each on one target of value 1: 1 - 1/4.
        let f = TargetAssignment::new(TargetAssignmentSpec {
            target_values: vec![int(1)],
            success_probs: vec![rat(1, 2), rat(1, 2)],
        })
        .unwrap();
        let both = f
            .assignment(0, &[0])
            .unwrap()
            .union(f.assignment(1, &[0]).unwrap());
        assert_eq!(f.value(both), rat(3, 4));

        let g = TargetAssignment::new(TargetAssignmentSpec {
            target_values: vec![int(6)],
            success_probs: vec![rat(1, 2), rat(1, 3)],
        })
        .unwrap();
        let both = g
            .assignment(0, &[0])
            .unwrap()
            .union(g.assignment(1, &[0]).unwrap());
        assert_eq!(g.value(both), int(4));
    }

    #[test]
    fn vta_single_agent() {
        let f = TargetAssignment::new(TargetAssignmentSpec {
            target_values: vec![int(4)],
            success_probs: vec![rat(1, 2)],
        })
        .unwrap();
        assert_eq!(f.value(f.assignment(0, &[0]).unwrap()), int(2));
    }

    #[test]
    fn vta_rejects_bad_probability() {
        let err = TargetAssignment::new(TargetAssignmentSpec {
            target_values: vec![int(1)],
            success_probs: vec![rat(3, 2)],
        })
        .unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn vta_with_certain_agents_is_wsc() {
        let values = example_values();
        let vta = TargetAssignment::new(TargetAssignmentSpec {
            target_values: values.clone(),
            success_probs: vec![int(1); 2],
        })
        .unwrap();
        let wsc = WeightedCoverage::from_values(&values).unwrap();
        for bits in 0u128..1 << vta.ground_size() {
            let set = ElementSet::from_bits(bits);
            assert_eq!(vta.value(set), wsc.value(vta.covered_targets(set)));
        }
    }
}
