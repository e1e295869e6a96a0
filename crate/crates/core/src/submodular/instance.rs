use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::parse_json;
use crate::rational::{self, Rational};

use super::{
    CappedSum, ElementSet, TargetAssignment, TargetAssignmentSpec, Valuation, WeightedCoverage,
};

/// The objectives that can be loaded from an instance file.
#[derive(Clone, Debug, PartialEq)]
pub enum Oracle {
    Wsc(WeightedCoverage),
    Vta(TargetAssignment),
    CappedSum(CappedSum),
}

impl Valuation for Oracle {
    fn ground_size(&self) -> usize {
        match self {
            Oracle::Wsc(f) => f.ground_size(),
            Oracle::Vta(f) => f.ground_size(),
            Oracle::CappedSum(f) => f.ground_size(),
        }
    }

    fn value(&self, set: ElementSet) -> Rational {
        match self {
            Oracle::Wsc(f) => f.value(set),
            Oracle::Vta(f) => f.value(set),
            Oracle::CappedSum(f) => f.value(set),
        }
    }
}

impl From<WeightedCoverage> for Oracle {
    fn from(f: WeightedCoverage) -> Self {
        Oracle::Wsc(f)
    }
}

impl From<TargetAssignment> for Oracle {
    fn from(f: TargetAssignment) -> Self {
        Oracle::Vta(f)
    }
}

impl From<CappedSum> for Oracle {
    fn from(f: CappedSum) -> Self {
        Oracle::CappedSum(f)
    }
}

/// Per-agent action families `X_1, ..., X_n`; every family is nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSets(Vec<Vec<ElementSet>>);

impl ActionSets {
    pub fn new(sets: Vec<Vec<ElementSet>>) -> Result<Self> {
        if let Some(i) = sets.iter().position(Vec::is_empty) {
            return Err(Error::input(format!("action set of agent {} is empty", i + 1)));
        }
        Ok(ActionSets(sets))
    }

    pub fn agents(&self) -> usize {
        self.0.len()
    }

    pub fn of(&self, agent: usize) -> &[ElementSet] {
        &self.0[agent]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[ElementSet]> {
        self.0.iter().map(Vec::as_slice)
    }

    /// `Π |X_i|`, saturating.
    pub fn profile_count(&self) -> u128 {
        self.0
            .iter()
            .fold(1u128, |acc, x| acc.saturating_mul(x.len() as u128))
    }
}

/// An objective together with the agents' action sets.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance<V = Oracle> {
    oracle: V,
    actions: ActionSets,
}

impl<V: Valuation> Instance<V> {
    pub fn new(oracle: V, actions: ActionSets) -> Result<Self> {
        let ground = oracle.ground_size();
        for (i, family) in actions.iter().enumerate() {
            if let Some(k) = family.iter().position(|a| !a.fits(ground)) {
                return Err(Error::input(format!(
                    "action {} of agent {} is not a subset of the ground set of size {ground}",
                    k,
                    i + 1
                )));
            }
        }
        Ok(Instance { oracle, actions })
    }

    pub fn n(&self) -> usize {
        self.actions.agents()
    }

    pub fn oracle(&self) -> &V {
        &self.oracle
    }

    pub fn actions(&self) -> &ActionSets {
        &self.actions
    }

    /// Union of the chosen actions, `profile[i]` indexing into `X_i`.
    pub fn union(&self, profile: &[usize]) -> ElementSet {
        profile
            .iter()
            .enumerate()
            .fold(ElementSet::empty(), |acc, (i, &k)| acc.union(self.actions.of(i)[k]))
    }

    pub fn profile_value(&self, profile: &[usize]) -> Rational {
        self.oracle.value(self.union(profile))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    Wsc,
    Vta,
    CappedSum,
}

/// On-disk instance.
///
/// Element ids in `actions` are 0-based. For `wsc` they are target indices;
/// for `vta` they are target indices too, paired with the owning agent; for
/// `capped_sum` ids `0..n` are `u_1..u_n` and `n..2n` are `v_1..v_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: InstanceKind,
    #[serde(default, with = "rational::vec_as_string", skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<Rational>,
    #[serde(default, with = "rational::vec_as_string", skip_serializing_if = "Vec::is_empty")]
    pub probs: Vec<Rational>,
    #[serde(default, with = "rational::vec_as_string", skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<Rational>,
    pub actions: Vec<Vec<Vec<usize>>>,
}

fn check_unused(field: &str, values: &[Rational], kind: &str) -> Result<()> {
    if values.is_empty() {
        Ok(())
    } else {
        Err(Error::input(format!("at /{field}: not used by kind \"{kind}\"")))
    }
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance> {
        if self.actions.is_empty() {
            return Err(Error::input("at /actions: no agents"));
        }
        let n = self.actions.len();
        let oracle: Oracle = match self.kind {
            InstanceKind::Wsc => {
                check_unused("probs", &self.probs, "wsc")?;
                check_unused("weights", &self.weights, "wsc")?;
                WeightedCoverage::from_values(&self.values)?.into()
            }
            InstanceKind::Vta => {
                check_unused("weights", &self.weights, "vta")?;
                if self.probs.len() != n {
                    return Err(Error::input(format!(
                        "at /probs: {} probabilities for {n} agents",
                        self.probs.len()
                    )));
                }
                TargetAssignment::new(TargetAssignmentSpec {
                    target_values: self.values.clone(),
                    success_probs: self.probs.clone(),
                })?
                .into()
            }
            InstanceKind::CappedSum => {
                check_unused("values", &self.values, "capped_sum")?;
                check_unused("probs", &self.probs, "capped_sum")?;
                if self.weights.len() != n {
                    return Err(Error::input(format!(
                        "at /weights: {} weights for {n} agents",
                        self.weights.len()
                    )));
                }
                CappedSum::new(self.weights.clone())?.into()
            }
        };
        let file_ground = match &oracle {
            Oracle::Vta(f) => f.targets(),
            other => other.ground_size(),
        };

        let mut families = Vec::with_capacity(n);
        for (i, family) in self.actions.iter().enumerate() {
            if family.is_empty() {
                return Err(Error::input(format!("at /actions/{i}: empty action set")));
            }
            let mut sets = Vec::with_capacity(family.len());
            for (k, action) in family.iter().enumerate() {
                let mut set = ElementSet::empty();
                for (j, &e) in action.iter().enumerate() {
                    if e >= file_ground {
                        return Err(Error::input(format!(
                            "at /actions/{i}/{k}/{j}: element {e} outside ground set of size {file_ground}"
                        )));
                    }
                    set.insert(match &oracle {
                        Oracle::Vta(f) => f.element(i, e),
                        _ => e,
                    });
                }
                sets.push(set);
            }
            families.push(sets);
        }
        Instance::new(oracle, ActionSets::new(families)?)
    }
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        let encode = |set: &ElementSet| -> Vec<usize> {
            match inst.oracle() {
                Oracle::Vta(f) => set.iter().map(|e| f.decode(e).1).collect(),
                _ => set.to_vec(),
            }
        };
        let actions = inst
            .actions()
            .iter()
            .map(|family| family.iter().map(encode).collect())
            .collect();
        let (kind, values, probs, weights) = match inst.oracle() {
            Oracle::Wsc(f) => (InstanceKind::Wsc, f.values().to_vec(), vec![], vec![]),
            Oracle::Vta(f) => (
                InstanceKind::Vta,
                f.values().to_vec(),
                f.probs().to_vec(),
                vec![],
            ),
            Oracle::CappedSum(f) => (InstanceKind::CappedSum, vec![], vec![], f.weights().to_vec()),
        };
        InstanceFile {
            kind,
            values,
            probs,
            weights,
            actions,
        }
    }
}

impl Instance {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&InstanceFile::from(self)).expect("instance serializes")
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_json::<InstanceFile>(text)?.into_instance()
}
