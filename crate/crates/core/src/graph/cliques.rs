use crate::error::{Error, Result};

use super::{mask_to_vec, InfoGraph, VertexMask};

/// Row guard for [`clique_matrix`]; the full clique list grows like `2^ω`.
pub const CLIQUE_ROW_LIMIT: usize = 1 << 16;

/// Inclusion-maximal cliques of the undirected shadow, each sorted ascending,
/// listed in lexicographic order.
///
/// Bron–Kerbosch with Tomita pivoting on bitmasks.
pub fn maximal_cliques(g: &InfoGraph) -> Vec<Vec<usize>> {
    let mut out: Vec<VertexMask> = Vec::new();
    if g.n() == 0 {
        return Vec::new();
    }
    expand(g, 0, g.all_mask(), 0, &mut out);
    let mut cliques: Vec<Vec<usize>> = out.into_iter().map(mask_to_vec).collect();
    cliques.sort();
    cliques
}

fn expand(
    g: &InfoGraph,
    current: VertexMask,
    candidates: VertexMask,
    excluded: VertexMask,
    out: &mut Vec<VertexMask>,
) {
    if candidates == 0 {
        if excluded == 0 {
            out.push(current);
        }
        return;
    }
    let pivot = mask_iter(candidates | excluded)
        .max_by_key(|&u| (candidates & g.adjacency_mask(u)).count_ones())
        .expect("nonempty");
    let mut candidates = candidates;
    let mut excluded = excluded;
    for v in mask_iter(candidates & !g.adjacency_mask(pivot)) {
        let nbrs = g.adjacency_mask(v);
        expand(g, current | 1 << v, candidates & nbrs, excluded & nbrs, out);
        candidates &= !(1 << v);
        excluded |= 1 << v;
    }
}

fn mask_iter(mask: VertexMask) -> impl Iterator<Item = usize> {
    let mut bits = mask;
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v)
        }
    })
}

/// Every nonempty clique, ordered by size then lexicographically (singletons first).
pub fn all_cliques(g: &InfoGraph, limit: usize) -> Result<Vec<Vec<usize>>> {
    let mut found: Vec<VertexMask> = Vec::new();
    // Grow cliques by appending only higher-indexed common neighbours, so each
    // clique is produced once.
    fn grow(
        g: &InfoGraph,
        clique: VertexMask,
        extendable: VertexMask,
        found: &mut Vec<VertexMask>,
        limit: usize,
    ) -> bool {
        for v in mask_iter(extendable) {
            let next = clique | 1 << v;
            found.push(next);
            if found.len() > limit {
                return false;
            }
            let higher = if v == 63 { 0 } else { !0u64 << (v + 1) };
            if !grow(g, next, extendable & g.adjacency_mask(v) & higher, found, limit) {
                return false;
            }
        }
        true
    }
    if !grow(g, 0, g.all_mask(), &mut found, limit) {
        return Err(Error::guard(
            "full clique enumeration (use the maximal-clique LP path instead)",
            limit as u64,
            found.len() as u64,
        ));
    }
    let mut cliques: Vec<Vec<usize>> = found.into_iter().map(mask_to_vec).collect();
    cliques.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(cliques)
}

/// The binary clique-incidence matrix `W`, one row per clique including singletons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueMatrix {
    pub rows: Vec<Vec<u8>>,
    pub clique_index: Vec<Vec<usize>>,
}

impl CliqueMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }
}

pub fn clique_matrix(g: &InfoGraph) -> Result<CliqueMatrix> {
    let cliques = all_cliques(g, CLIQUE_ROW_LIMIT)?;
    let rows = cliques
        .iter()
        .map(|c| {
            let mut row = vec![0u8; g.n()];
            for &v in c {
                row[v] = 1;
            }
            row
        })
        .collect();
    Ok(CliqueMatrix {
        rows,
        clique_index: cliques,
    })
}
