//! Admissible information graphs and their exact combinatorial statistics.
//!
//! Agents are 0-based in the Rust API. Everything a person reads (JSON files,
//! DOT output, error messages about edges) uses 1-based agent labels.

mod cliques;
mod io;
mod numbers;
mod sibling;

use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub use cliques::{all_cliques, clique_matrix, maximal_cliques, CliqueMatrix, CLIQUE_ROW_LIMIT};
pub use io::GraphFile;
pub use numbers::{exact_numbers, exact_numbers_with_limit, ExactNumbers, EXACT_NODE_LIMIT};
pub use sibling::{sibling_property, StructureAudit, SiblingVerdict, SiblingWitness};

/// Vertex subset encoded as a bitmask over agents.
pub type VertexMask = u64;

pub fn mask_to_vec(mask: VertexMask) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn vec_to_mask(vertices: &[usize]) -> VertexMask {
    vertices.iter().fold(0, |m, &v| m | 1 << v)
}

/// Directed graph on agents `0..n` whose edges all point from a lower to a
/// higher index. Edge `(j, i)` means agent `i` observes agent `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InfoGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    in_mask: Vec<VertexMask>,
    out_mask: Vec<VertexMask>,
}

impl InfoGraph {
    pub const MAX_NODES: usize = 64;

    /// Validates and builds a graph from 0-based edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > Self::MAX_NODES {
            return Err(Error::input(format!(
                "{n} agents exceed the supported maximum of {}",
                Self::MAX_NODES
            )));
        }
        let mut set = BTreeSet::new();
        let mut in_mask = vec![0; n];
        let mut out_mask = vec![0; n];
        for &(from, to) in edges {
            if from >= n || to >= n {
                return Err(Error::input(format!(
                    "edge ({}, {}) references an agent outside 1..={n}",
                    from + 1,
                    to + 1
                )));
            }
            if from >= to {
                return Err(Error::Admissibility {
                    from: from + 1,
                    to: to + 1,
                });
            }
            if !set.insert((from, to)) {
                return Err(Error::input(format!(
                    "duplicate edge ({}, {})",
                    from + 1,
                    to + 1
                )));
            }
            in_mask[to] |= 1 << from;
            out_mask[from] |= 1 << to;
        }
        Ok(InfoGraph {
            n,
            edges: set,
            in_mask,
            out_mask,
        })
    }

    /// Builds a graph from edges written with the 1-based agent labels.
    pub fn from_labels(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let shifted = edges
            .iter()
            .map(|&(a, b)| {
                if a == 0 || b == 0 {
                    Err(Error::input("agent labels start at 1"))
                } else {
                    Ok((a - 1, b - 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, &shifted)
    }

    pub fn edgeless(n: usize) -> Self {
        Self::new(n, &[]).expect("edgeless graph is admissible")
    }

    /// The full-information graph: every agent observes all predecessors.
    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|j| (j + 1..n).map(move |i| (j, i)))
            .collect();
        Self::new(n, &edges).expect("complete DAG is admissible")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order, 0-based.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }

    /// `N_i`: the agents whose decisions agent `i` can see.
    pub fn in_neighbors(&self, agent: usize) -> Vec<usize> {
        mask_to_vec(self.in_mask[agent])
    }

    pub fn in_mask(&self, agent: usize) -> VertexMask {
        self.in_mask[agent]
    }

    pub fn out_mask(&self, agent: usize) -> VertexMask {
        self.out_mask[agent]
    }

    /// Neighbours in the undirected shadow.
    pub fn adjacency_mask(&self, agent: usize) -> VertexMask {
        self.in_mask[agent] | self.out_mask[agent]
    }

    pub fn all_mask(&self) -> VertexMask {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn is_clique(&self, mask: VertexMask) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if rest & !self.adjacency_mask(v) != 0 {
                return false;
            }
        }
        true
    }

    pub fn is_independent(&self, mask: VertexMask) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if rest & self.adjacency_mask(v) != 0 {
                return false;
            }
        }
        true
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Subgraph induced on `keep`, relabelled to `0..|keep|` in index order.
    pub fn induced(&self, keep: VertexMask) -> InfoGraph {
        let vertices = mask_to_vec(keep & self.all_mask());
        let mut position = vec![usize::MAX; self.n];
        for (k, &v) in vertices.iter().enumerate() {
            position[v] = k;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(a, b)| keep >> a & 1 == 1 && keep >> b & 1 == 1)
            .map(|(a, b)| (position[a], position[b]))
            .collect();
        InfoGraph::new(vertices.len(), &edges).expect("induced subgraph keeps index order")
    }

    pub fn with_edge_removed(&self, from: usize, to: usize) -> InfoGraph {
        let edges: Vec<_> = self.edges().filter(|&e| e != (from, to)).collect();
        InfoGraph::new(self.n, &edges).expect("removing an edge keeps admissibility")
    }

    /// Graph whose edge set is the bitmask `code` over the pairs `(i, j)`, `i < j`,
    /// listed in lexicographic order. Used to enumerate every admissible graph.
    pub fn from_edge_code(n: usize, code: u64) -> InfoGraph {
        let edges: Vec<_> = Self::pairs(n)
            .enumerate()
            .filter(|(k, _)| code >> k & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        InfoGraph::new(n, &edges).expect("pair list is admissible")
    }

    /// Number of admissible graphs on `n` agents, as a power of two exponent.
    pub fn pair_count(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    /// Isomorphism-invariant key of the undirected shadow (minimum edge code
    /// over all relabellings). Cliques, independence and the fractional numbers
    /// only depend on the shadow, so this is the right dedup key for them.
    pub fn shadow_canonical_key(&self) -> Result<u64> {
        const LIMIT: usize = 9;
        if self.n > LIMIT {
            return Err(Error::guard(
                "canonical labelling",
                LIMIT as u64,
                self.n as u64,
            ));
        }
        let n = self.n;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        let index: Vec<Vec<usize>> = {
            let mut idx = vec![vec![0; n]; n];
            for (k, (i, j)) in Self::pairs(n).enumerate() {
                idx[i][j] = k;
                idx[j][i] = k;
            }
            idx
        };
        let code_of = |perm: &[usize]| -> u64 {
            self.edges()
                .fold(0u64, |c, (a, b)| c | 1 << index[perm[a]][perm[b]])
        };
        // Heap's algorithm over all relabellings.
        let mut counters = vec![0usize; n];
        best = best.min(code_of(&perm));
        let mut i = 0;
        while i < n {
            if counters[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(counters[i], i);
                }
                best = best.min(code_of(&perm));
                counters[i] += 1;
                i = 0;
            } else {
                counters[i] = 0;
                i += 1;
            }
        }
        Ok(best)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::InfoGraph;

    pub fn four_agents() -> InfoGraph {
        InfoGraph::from_labels(4, &[(1, 3), (2, 3), (1, 4)]).unwrap()
    }

    pub fn k4_minus_edge() -> InfoGraph {
        InfoGraph::from_labels(4, &[(1, 2), (1, 3), (2, 3), (1, 4), (2, 4)]).unwrap()
    }

    pub fn five_cycle() -> InfoGraph {
        InfoGraph::from_labels(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]).unwrap()
    }

    pub fn single_edge() -> InfoGraph {
        InfoGraph::from_labels(3, &[(1, 2)]).unwrap()
    }
}
