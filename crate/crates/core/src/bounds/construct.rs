use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{sibling_property, InfoGraph};
use crate::greedy::{efficiency, EfficiencyReport};
use crate::lp::{closed_neighborhood_point, fractional_numbers};
use crate::par::Execution;
use crate::rational::{self, Rational};
use crate::submodular::{
    ActionSets, CappedSum, ElementSet, Instance, InstanceFile, Oracle, WeightedCoverage,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    CanonicalUpper,
    SiblingLower,
    Handcrafted,
}

/// A constructed instance together with the efficiency it was built to show
/// and the efficiency the greedy engine actually measured on it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WorstCaseInstance {
    pub construction: Construction,
    #[serde(with = "rational::as_string")]
    pub predicted_gamma: Rational,
    pub realized: EfficiencyReport,
    /// Which ingredients were used (LP point, witness), in words.
    pub detail: String,
    #[serde(serialize_with = "instance_as_file")]
    pub instance: Instance,
}

fn instance_as_file<S: Serializer>(inst: &Instance, s: S) -> std::result::Result<S::Ok, S::Error> {
    InstanceFile::from(inst).serialize(s)
}

impl WorstCaseInstance {
    /// Measured worst-case efficiency equals the prediction exactly.
    pub fn certified(&self) -> bool {
        self.realized.gamma == self.predicted_gamma
    }
}

pub(crate) fn require_agents(g: &InfoGraph) -> Result<()> {
    if g.n() == 0 {
        Err(Error::input("the graph has no agents"))
    } else {
        Ok(())
    }
}

fn labels(set: &[usize]) -> String {
    let parts: Vec<String> = set.iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// The two-option capped-sum instance: `X_i = {{u_i}, {v_i}}` with weights
/// `z`. Greedy may take every `u_i` (the cap keeps each worth `z_i` to an agent
/// whose observed neighbours form a clique) while the optimum takes every
/// `v_i`, worth `Σ z`.
pub fn capped_sum_instance(g: &InfoGraph, z: Vec<Rational>) -> Result<Instance> {
    let f = CappedSum::for_graph(z, g)?;
    let actions = (0..g.n())
        .map(|i| vec![ElementSet::singleton(f.u(i)), ElementSet::singleton(f.v(i))])
        .collect();
    Instance::new(Oracle::CappedSum(f), ActionSets::new(actions)?)
}

pub fn canonical_upper_instance(g: &InfoGraph) -> Result<WorstCaseInstance> {
    canonical_upper_instance_with(g, Execution::Parallel)
}

/// Capped-sum instance weighted by an optimal fractional independent set,
/// predicted to have efficiency `1/α*`.
///
/// The packing LP vertex is tried first. When greedy does better than
/// predicted on it (this happens when some agent's observed neighbourhood is
/// not a clique, e.g. on odd holes), an optimal point that also keeps every
/// closed in-neighbourhood at weight ≤ 1 is tried, if one exists. If neither
/// certifies, the first instance is returned with its measured efficiency.
pub fn canonical_upper_instance_with(g: &InfoGraph, exec: Execution) -> Result<WorstCaseInstance> {
    require_agents(g)?;
    let fractional = fractional_numbers(g)?;
    if fractional.alpha_star.is_zero() {
        return Err(Error::consistency("fractional independence number is 0"));
    }
    let predicted = Rational::one() / fractional.alpha_star;
    let build = |z: Vec<Rational>, detail: &str| -> Result<WorstCaseInstance> {
        let instance = capped_sum_instance(g, z)?;
        let realized = efficiency(&instance, g, exec)?;
        Ok(WorstCaseInstance {
            construction: Construction::CanonicalUpper,
            predicted_gamma: predicted,
            realized,
            detail: detail.to_string(),
            instance,
        })
    };
    let first = build(fractional.independence_point, "weights from the clique packing LP vertex")?;
    if first.certified() {
        return Ok(first);
    }
    if let Some(z) = closed_neighborhood_point(g)? {
        let second = build(z, "weights from the packing LP with closed in-neighbourhood rows")?;
        if second.certified() {
            return Ok(second);
        }
    }
    Ok(first)
}

pub fn sibling_lower_instance(g: &InfoGraph) -> Result<WorstCaseInstance> {
    sibling_lower_instance_with(g, Execution::Parallel)
}

/// Coverage instance predicted to have efficiency `1/(1 + α)` on a graph with
/// the Sibling Property.
///
/// With witness `(J, i, w)`: targets `t_1..t_n`, unit value on `J ∪ {w}`;
/// members of `J` may take `t_w` or their own target, `w` must take `t_w`.
/// Greedy can pile every member of `J` onto `t_w`. When `w` informs a later
/// member of `J`, `w` also gets a worthless extra target so that the worst
/// tie-break hides `t_w` from that member.
pub fn sibling_lower_instance_with(g: &InfoGraph, exec: Execution) -> Result<WorstCaseInstance> {
    require_agents(g)?;
    let verdict = sibling_property(g)?;
    let Some(witness) = verdict.preferred_witness() else {
        return Err(Error::Precondition(
            "the graph lacks the Sibling Property, so the construction does not apply".into(),
        ));
    };
    let n = g.n();
    let w = witness.observer;
    let j = &witness.independent_set;
    let targets = if witness.clean { n } else { n + 1 };
    let mut values = vec![Rational::zero(); targets];
    for &a in j.iter().chain([&w]) {
        values[a] = Rational::one();
    }
    let s = ElementSet::singleton;
    let actions = (0..n)
        .map(|a| {
            if j.contains(&a) {
                vec![s(w), s(a)]
            } else if a == w && !witness.clean {
                vec![s(w), s(n)]
            } else {
                vec![s(a)]
            }
        })
        .collect();
    let instance = Instance::new(
        Oracle::Wsc(WeightedCoverage::from_values(&values)?),
        ActionSets::new(actions)?,
    )?;
    let realized = efficiency(&instance, g, exec)?;
    let mut detail = format!(
        "J = {}, i = {}, w = {}",
        labels(j),
        witness.observed + 1,
        w + 1
    );
    if !witness.clean {
        detail.push_str(", with a zero-value alternative for w");
    }
    Ok(WorstCaseInstance {
        construction: Construction::SiblingLower,
        predicted_gamma: Rational::one() / Rational::from_integer(j.len() as i64 + 1),
        realized,
        detail,
        instance,
    })
}
