use std::fmt::Write as _;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::InfoGraph;
use crate::par::{try_map_range, Execution};
use crate::rational::{self, Rational};

use super::turan::{graph_as_file, t_hat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignCase {
    /// A complement Turán graph.
    THat,
    /// The complete graph minus the edge between the last two agents.
    CliqueMinusEdge,
}

impl DesignCase {
    pub fn tag(self) -> &'static str {
        match self {
            DesignCase::THat => "t_hat",
            DesignCase::CliqueMinusEdge => "clique_minus_edge",
        }
    }

    fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "t_hat" => Some(DesignCase::THat),
            "clique_minus_edge" => Some(DesignCase::CliqueMinusEdge),
            _ => None,
        }
    }
}

/// The graph with the best guaranteed worst-case efficiency among graphs on
/// `n` agents with at most `m` edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignResult {
    pub n: usize,
    pub budget: usize,
    pub m_used: usize,
    /// Independence number of the design.
    pub r: usize,
    #[serde(with = "rational::as_string")]
    pub gamma_guaranteed: Rational,
    pub case_tag: DesignCase,
    /// Clique blocks, used as DOT clusters.
    pub partition: Vec<Vec<usize>>,
    #[serde(serialize_with = "graph_as_file")]
    pub graph: InfoGraph,
}

impl DesignResult {
    pub fn to_dot(&self) -> String {
        self.graph.to_dot(&self.partition)
    }
}

pub fn optimal_structure(n: usize, m: usize) -> Result<DesignResult> {
    if n == 0 {
        return Err(Error::input("need at least one agent"));
    }
    let full = InfoGraph::pair_count(n);
    if m > full {
        return Err(Error::input(format!(
            "edge budget {m} exceeds the {full} possible edges on {n} agents"
        )));
    }
    if n >= 2 && m + 1 == full {
        let graph = InfoGraph::complete(n).with_edge_removed(n - 2, n - 1);
        return Ok(DesignResult {
            n,
            budget: m,
            m_used: graph.edge_count(),
            r: n.min(2),
            gamma_guaranteed: Rational::new(1, 2),
            case_tag: DesignCase::CliqueMinusEdge,
            partition: Vec::new(),
            graph,
        });
    }
    let design = t_hat(n, m)?;
    // Edgeless designs lack the Sibling Property; greedy on them is 1/n-efficient.
    let gamma = if design.r == n {
        Rational::new(1, n as i64)
    } else {
        Rational::one() / Rational::from_integer(design.r as i64 + 1)
    };
    Ok(DesignResult {
        n,
        budget: m,
        m_used: design.graph.edge_count(),
        r: design.r,
        gamma_guaranteed: gamma,
        case_tag: DesignCase::THat,
        partition: design.partition,
        graph: design.graph,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurvePoint {
    pub m: usize,
    #[serde(with = "rational::as_string")]
    pub gamma: Rational,
    pub r: usize,
    pub case_tag: DesignCase,
}

/// Guaranteed efficiency of the optimal design for every budget `0..=n(n-1)/2`.
pub fn efficiency_curve(n: usize, exec: Execution) -> Result<Vec<CurvePoint>> {
    if n == 0 {
        return Err(Error::input("need at least one agent"));
    }
    try_map_range(exec, 0..InfoGraph::pair_count(n) + 1, |m| {
        let d = optimal_structure(n, m)?;
        Ok(CurvePoint {
            m,
            gamma: d.gamma_guaranteed,
            r: d.r,
            case_tag: d.case_tag,
        })
    })
}

pub const CURVE_HEADER: &str = "m,gamma_num,gamma_den,r,case_tag";

pub fn curve_to_csv(points: &[CurvePoint]) -> String {
    let mut out = String::new();
    writeln!(out, "{CURVE_HEADER}").unwrap();
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{}",
            p.m,
            p.gamma.numer(),
            p.gamma.denom(),
            p.r,
            p.case_tag.tag()
        )
        .unwrap();
    }
    out
}

pub fn parse_curve_csv(text: &str) -> Result<Vec<CurvePoint>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(CURVE_HEADER) {
        return Err(Error::input(format!("curve CSV must start with `{CURVE_HEADER}`")));
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, line)| {
            let row = k + 2;
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols.len() != 5 {
                return Err(Error::input(format!("line {row}: expected 5 columns")));
            }
            let num = |c: &str| -> Result<i64> {
                c.parse()
                    .map_err(|_| Error::input(format!("line {row}: `{c}` is not an integer")))
            };
            let den = num(cols[2])?;
            if den <= 0 {
                return Err(Error::input(format!("line {row}: denominator must be positive")));
            }
            Ok(CurvePoint {
                m: num(cols[0])? as usize,
                gamma: Rational::new(num(cols[1])?, den),
                r: num(cols[3])? as usize,
                case_tag: DesignCase::from_tag(cols[4])
                    .ok_or_else(|| Error::input(format!("line {row}: unknown case `{}`", cols[4])))?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;
    use crate::rational::{int, rat};

    #[test]
    fn design_examples() {
        let d = optimal_structure(10, 20).unwrap();
        assert_eq!((d.r, d.gamma_guaranteed, d.m_used), (2, rat(1, 3), 20));
        let d = optimal_structure(4, 5).unwrap();
        assert_eq!(d.graph, fixtures::k4_minus_edge());
        assert_eq!(d.gamma_guaranteed, rat(1, 2));
        assert_eq!(d.case_tag, DesignCase::CliqueMinusEdge);
        let d = optimal_structure(6, 15).unwrap();
        assert!(d.graph.is_complete());
        assert_eq!(d.gamma_guaranteed, rat(1, 2));
    }

    #[test]
    fn edgeless_designs() {
        assert_eq!(optimal_structure(1, 0).unwrap().gamma_guaranteed, int(1));
        assert_eq!(optimal_structure(5, 0).unwrap().gamma_guaranteed, rat(1, 5));
    }

    #[test]
    fn rejects_bad_budgets() {
        assert!(optimal_structure(4, 7).is_err());
        assert!(optimal_structure(0, 0).is_err());
    }

    #[test]
    fn curve_plateaus_for_ten_agents() {
        let c = efficiency_curve(10, Execution::Parallel).unwrap();
        assert_eq!(c.len(), 46);
        assert!((12..=19).all(|m| c[m].gamma == rat(1, 4)));
        assert_eq!(c[20].gamma, rat(1, 3));
        assert_eq!(c[44].gamma, rat(1, 2));
        assert_eq!(c[45].gamma, rat(1, 2));
        assert!(c.windows(2).all(|w| w[0].gamma <= w[1].gamma));
    }

    #[test]
    fn single_agent_curve() {
        let c = efficiency_curve(1, Execution::Sequential).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].gamma, int(1));
    }

    #[test]
    fn csv_round_trip() {
        let c = efficiency_curve(6, Execution::Sequential).unwrap();
        let csv = curve_to_csv(&c);
        assert!(csv.starts_with("m,gamma_num,gamma_den,r,case_tag\n0,1,6,6,t_hat\n"));
        assert_eq!(parse_curve_csv(&csv).unwrap(), c);
        assert!(parse_curve_csv("m,gamma\n").is_err());
    }

    #[test]
    fn dot_has_clusters() {
        let d = optimal_structure(8, 7).unwrap();
        assert_eq!(d.to_dot().matches("subgraph cluster_").count(), 3);
    }
}
