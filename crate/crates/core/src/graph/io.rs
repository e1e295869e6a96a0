use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::io::parse_json;

use super::InfoGraph;

/// On-disk graph: `{ "n": 4, "edges": [[1, 2], ...] }` with 1-based agent labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphFile {
    pub fn into_graph(self) -> Result<InfoGraph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        InfoGraph::from_labels(self.n, &edges)
    }
}

impl From<&InfoGraph> for GraphFile {
    fn from(g: &InfoGraph) -> Self {
        GraphFile {
            n: g.n(),
            edges: g.edges().map(|(a, b)| [a + 1, b + 1]).collect(),
        }
    }
}

impl InfoGraph {
    pub fn from_json(text: &str) -> Result<InfoGraph> {
        parse_json::<GraphFile>(text)?.into_graph()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphFile::from(self)).expect("graph serializes")
    }

    /// Graphviz rendering, ranked left to right by agent order. Each entry of
    /// `clusters` becomes a boxed subgraph.
    pub fn to_dot(&self, clusters: &[Vec<usize>]) -> String {
        let mut out = String::new();
        writeln!(out, "digraph G {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  node [shape=circle];").unwrap();
        let mut placed = vec![false; self.n()];
        for (k, members) in clusters.iter().enumerate() {
            writeln!(out, "  subgraph cluster_{k} {{").unwrap();
            writeln!(out, "    style=rounded;").unwrap();
            for &v in members {
                writeln!(out, "    {};", v + 1).unwrap();
                placed[v] = true;
            }
            writeln!(out, "  }}").unwrap();
        }
        for v in (0..self.n()).filter(|&v| !placed[v]) {
            writeln!(out, "  {};", v + 1).unwrap();
        }
        for (a, b) in self.edges() {
            writeln!(out, "  {} -> {};", a + 1, b + 1).unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }
}
