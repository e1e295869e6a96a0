use serde::Serialize;

use crate::error::{Error, Result};

use super::{mask_to_vec, InfoGraph, VertexMask};

/// Default node guard for the exhaustive integer computations.
pub const EXACT_NODE_LIMIT: usize = 16;

/// Largest supported override of [`EXACT_NODE_LIMIT`]; tables have `2^n` entries.
const HARD_NODE_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactNumbers {
    /// Independence number α(G).
    pub alpha: usize,
    /// Clique cover number k(G).
    pub clique_cover: usize,
    /// Clique number ω(G).
    pub omega: usize,
    /// Every independent set of size α, sorted.
    pub max_independent_sets: Vec<Vec<usize>>,
    /// One minimum clique cover (a partition of the agents).
    pub min_clique_cover: Vec<Vec<usize>>,
}

pub fn exact_numbers(g: &InfoGraph) -> Result<ExactNumbers> {
    exact_numbers_with_limit(g, EXACT_NODE_LIMIT)
}

pub fn exact_numbers_with_limit(g: &InfoGraph, max_nodes: usize) -> Result<ExactNumbers> {
    let limit = max_nodes.min(HARD_NODE_LIMIT);
    if g.n() > limit {
        return Err(Error::guard(
            "exhaustive independence/clique-cover search",
            limit as u64,
            g.n() as u64,
        ));
    }
    let n = g.n();
    if n == 0 {
        return Ok(ExactNumbers {
            alpha: 0,
            clique_cover: 0,
            omega: 0,
            max_independent_sets: vec![vec![]],
            min_clique_cover: vec![],
        });
    }
    let size = 1usize << n;
    let mut independent = vec![false; size];
    let mut clique = vec![false; size];
    independent[0] = true;
    clique[0] = true;
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let adj = g.adjacency_mask(low) as usize;
        independent[mask] = independent[rest] && adj & rest == 0;
        clique[mask] = clique[rest] && rest & !adj == 0;
    }

    let alpha = (0..size)
        .filter(|&m| independent[m])
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0);
    let max_independent_sets = {
        let mut sets: Vec<Vec<usize>> = (0..size)
            .filter(|&m| independent[m] && m.count_ones() as usize == alpha)
            .map(|m| mask_to_vec(m as VertexMask))
            .collect();
        sets.sort();
        sets
    };
    let omega = (0..size)
        .filter(|&m| clique[m])
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0);

    // cover[mask] = fewest cliques partitioning `mask`; the clique holding the
    // lowest vertex is chosen first so each partition is visited once.
    let mut cover = vec![u8::MAX; size];
    let mut choice = vec![0usize; size];
    cover[0] = 0;
    for mask in 1..size {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let c = sub | low;
            if clique[c] {
                let cand = cover[mask ^ c].saturating_add(1);
                if cand < cover[mask] {
                    cover[mask] = cand;
                    choice[mask] = c;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    let mut min_clique_cover = Vec::new();
    let mut mask = size - 1;
    while mask != 0 {
        min_clique_cover.push(mask_to_vec(choice[mask] as VertexMask));
        mask ^= choice[mask];
    }
    min_clique_cover.sort();

    Ok(ExactNumbers {
        alpha,
        clique_cover: cover[size - 1] as usize,
        omega,
        max_independent_sets,
        min_clique_cover,
    })
}
