use serde::Serialize;

use crate::error::{Error, Result};

use super::{exact_numbers, vec_to_mask, InfoGraph};

/// A maximum independent set `J` with `i ∈ J` observed by `w ∉ J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiblingWitness {
    pub independent_set: Vec<usize>,
    pub observed: usize,
    pub observer: usize,
    /// `w` has no outgoing edge into `J`, so no later member of `J` sees `w`'s
    /// decision. The textbook worst-case instance works verbatim for these.
    pub clean: bool,
}

/// Structural facts forced on a graph that lacks the Sibling Property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureAudit {
    /// `J = V`, so there is no outside vertex and the remaining checks are vacuous.
    pub vacuous: bool,
    pub unique_maximum: bool,
    pub contains_last_two: bool,
    pub alpha_drops: bool,
    pub outside_links_twice: bool,
}

impl StructureAudit {
    pub fn holds(&self) -> bool {
        self.unique_maximum && self.contains_last_two && self.alpha_drops && self.outside_links_twice
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiblingVerdict {
    pub has_property: bool,
    /// All witnesses, ordered by `J`, then `w`, then `i`.
    pub witnesses: Vec<SiblingWitness>,
    /// Present exactly when the property is absent.
    pub structure_audit: Option<StructureAudit>,
}

impl SiblingVerdict {
    /// First clean witness, falling back to the first witness.
    pub fn preferred_witness(&self) -> Option<&SiblingWitness> {
        self.witnesses
            .iter()
            .find(|w| w.clean)
            .or_else(|| self.witnesses.first())
    }
}

/// Decides the Sibling Property. When it is absent, also audits the four
/// consequences (unique maximum set, last two agents inside it, α drops once
/// it is removed, each outside agent feeds at least two members) and fails
/// with a consistency error if any of them is violated.
pub fn sibling_property(g: &InfoGraph) -> Result<SiblingVerdict> {
    let numbers = exact_numbers(g)?;
    let mut witnesses = Vec::new();
    for set in &numbers.max_independent_sets {
        let j_mask = vec_to_mask(set);
        for w in (0..g.n()).filter(|w| j_mask >> w & 1 == 0) {
            let clean = g.out_mask(w) & j_mask == 0;
            for &i in set.iter().filter(|&&i| g.in_mask(w) >> i & 1 == 1) {
                witnesses.push(SiblingWitness {
                    independent_set: set.clone(),
                    observed: i,
                    observer: w,
                    clean,
                });
            }
        }
    }
    if !witnesses.is_empty() {
        return Ok(SiblingVerdict {
            has_property: true,
            witnesses,
            structure_audit: None,
        });
    }

    let n = g.n();
    let set = &numbers.max_independent_sets[0];
    let j_mask = vec_to_mask(set);
    let outside = g.all_mask() & !j_mask;
    let audit = if outside == 0 {
        StructureAudit {
            vacuous: true,
            unique_maximum: numbers.max_independent_sets.len() == 1,
            contains_last_two: true,
            alpha_drops: true,
            outside_links_twice: true,
        }
    } else {
        let rest = g.induced(outside);
        let rest_alpha = exact_numbers(&rest)?.alpha;
        StructureAudit {
            vacuous: false,
            unique_maximum: numbers.max_independent_sets.len() == 1,
            contains_last_two: n < 2 || (j_mask >> (n - 1) & 1 == 1 && j_mask >> (n - 2) & 1 == 1),
            alpha_drops: rest_alpha < numbers.alpha,
            outside_links_twice: (0..n)
                .filter(|v| outside >> v & 1 == 1)
                .all(|v| (g.out_mask(v) & j_mask).count_ones() >= 2),
        }
    };
    if !audit.holds() {
        return Err(Error::consistency(format!(
            "graph without the Sibling Property violates the structural audit: {audit:?}"
        )));
    }
    Ok(SiblingVerdict {
        has_property: false,
        witnesses,
        structure_audit: Some(audit),
    })
}
