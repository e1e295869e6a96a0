use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::{map_range, Execution};
use crate::rational::{self, Rational};

use super::{ElementSet, Valuation};

/// Default largest ground set the audit will enumerate.
pub const AUDIT_GROUND_LIMIT: usize = 16;

/// Hard ceiling: the value table has `2^|S|` entries.
const AUDIT_HARD_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum AuditWitness {
    Normalized {
        #[serde(with = "rational::as_string")]
        empty_value: Rational,
    },
    /// `f(smaller) > f(larger)` with `smaller ⊆ larger`.
    Monotone {
        smaller: Vec<usize>,
        larger: Vec<usize>,
        #[serde(with = "rational::as_string")]
        smaller_value: Rational,
        #[serde(with = "rational::as_string")]
        larger_value: Rational,
    },
    /// `Δ(x | a) < Δ(x | b)` with `a ⊆ b`, `x ∉ b`.
    Submodular {
        a: Vec<usize>,
        b: Vec<usize>,
        x: usize,
        #[serde(with = "rational::as_string")]
        gain_at_a: Rational,
        #[serde(with = "rational::as_string")]
        gain_at_b: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub ground_size: usize,
    pub normalized: bool,
    pub monotone: bool,
    pub submodular: bool,
    /// First counterexample for each failing property.
    pub witnesses: Vec<AuditWitness>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.normalized && self.monotone && self.submodular
    }
}

pub fn audit_properties<V: Valuation + ?Sized>(oracle: &V) -> Result<AuditReport> {
    audit_properties_with_limit(oracle, AUDIT_GROUND_LIMIT)
}

/// Exhaustive check of normalization, monotonicity and diminishing returns.
///
/// Monotonicity is checked on single-element steps and diminishing returns on
/// `a ⊆ a ∪ {y}`; both imply the general statements by telescoping, and the
/// first local violation is itself a valid counterexample. Sets are scanned in
/// increasing bit order, then `y`, then `x`.
pub fn audit_properties_with_limit<V: Valuation + ?Sized>(
    oracle: &V,
    limit: usize,
) -> Result<AuditReport> {
    let n = oracle.ground_size();
    let limit = limit.min(AUDIT_HARD_LIMIT);
    if n > limit {
        return Err(Error::guard("exhaustive property audit", limit as u64, n as u64));
    }
    let size = 1usize << n;
    let table: Vec<Rational> = map_range(Execution::Parallel, 0..size, |bits| {
        oracle.value(ElementSet::from_bits(bits as u128))
    });

    let mut witnesses = Vec::new();
    let normalized = table[0] == Rational::from_integer(0);
    if !normalized {
        witnesses.push(AuditWitness::Normalized {
            empty_value: table[0],
        });
    }

    let monotone_hits = map_range(Execution::Parallel, 0..size, |a| {
        (0..n)
            .filter(|x| a >> x & 1 == 0)
            .find(|x| table[a] > table[a | 1 << x])
            .map(|x| (a, x))
    });
    let monotone_hit = monotone_hits.into_iter().flatten().next();
    if let Some((a, x)) = monotone_hit {
        witnesses.push(AuditWitness::Monotone {
            smaller: to_vec(a),
            larger: to_vec(a | 1 << x),
            smaller_value: table[a],
            larger_value: table[a | 1 << x],
        });
    }

    let submodular_hits = map_range(Execution::Parallel, 0..size, |a| {
        for y in (0..n).filter(|y| a >> y & 1 == 0) {
            let b = a | 1 << y;
            for x in (0..n).filter(|&x| x != y && a >> x & 1 == 0) {
                let at_a = table[a | 1 << x] - table[a];
                let at_b = table[b | 1 << x] - table[b];
                if at_a < at_b {
                    return Some((a, b, x, at_a, at_b));
                }
            }
        }
        None
    });
    let submodular_hit = submodular_hits.into_iter().flatten().next();
    if let Some((a, b, x, gain_at_a, gain_at_b)) = submodular_hit {
        witnesses.push(AuditWitness::Submodular {
            a: to_vec(a),
            b: to_vec(b),
            x,
            gain_at_a,
            gain_at_b,
        });
    }

    Ok(AuditReport {
        ground_size: n,
        normalized,
        monotone: monotone_hit.is_none(),
        submodular: submodular_hit.is_none(),
        witnesses,
    })
}

fn to_vec(bits: usize) -> Vec<usize> {
    ElementSet::from_bits(bits as u128).to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::submodular::{CappedSum, Tabulated, WeightedCoverage};

    #[test]
    fn coverage_passes() {
        let f = WeightedCoverage::from_values(&[int(2), int(1), int(3), int(3), int(1)]).unwrap();
        let report = audit_properties(&f).unwrap();
        assert!(report.passed());
        assert!(report.witnesses.is_empty());
    }

    #[test]
    fn capped_sum_passes() {
        let f = CappedSum::new(vec![int(0), int(0), int(1), int(1)]).unwrap();
        assert!(audit_properties(&f).unwrap().passed());
    }

    #[test]
    fn squared_cardinality_fails_with_first_witness() {
        let f = Tabulated::from_fn(3, |s| int((s.len() * s.len()) as i64)).unwrap();
        let report = audit_properties(&f).unwrap();
        assert!(report.normalized && report.monotone && !report.submodular);
        assert_eq!(
            report.witnesses,
            vec![AuditWitness::Submodular {
                a: vec![],
                b: vec![0],
                x: 1,
                gain_at_a: int(1),
                gain_at_b: int(3),
            }]
        );
    }

    #[test]
    fn detects_non_normalized_and_non_monotone() {
        let f = Tabulated::from_fn(2, |s| int(2 - s.len() as i64)).unwrap();
        let report = audit_properties(&f).unwrap();
        assert!(!report.normalized && !report.monotone);
        assert!(matches!(report.witnesses[1], AuditWitness::Monotone { .. }));
    }

    #[test]
    fn refuses_above_guard() {
        let f = WeightedCoverage::from_values(&vec![int(1); 17]).unwrap();
        assert!(matches!(audit_properties(&f).unwrap_err(), Error::Guard { .. }));
    }
}
