use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{exact_numbers, sibling_property, InfoGraph};

/// `r` disjoint cliques of near-equal size; the fewest-edge graph whose
/// independence number is `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TuranDesign {
    pub n: usize,
    pub r: usize,
    /// Clique blocks, larger blocks first, each a contiguous index range.
    pub partition: Vec<Vec<usize>>,
    #[serde(serialize_with = "graph_as_file")]
    pub graph: InfoGraph,
}

pub(crate) fn graph_as_file<S: serde::Serializer>(
    g: &InfoGraph,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    crate::graph::GraphFile::from(g).serialize(s)
}

fn blocks_to_graph(n: usize, partition: &[Vec<usize>]) -> InfoGraph {
    let edges: Vec<(usize, usize)> = partition
        .iter()
        .flat_map(|block| {
            block
                .iter()
                .enumerate()
                .flat_map(move |(k, &a)| block[k + 1..].iter().map(move |&b| (a, b)))
        })
        .collect();
    InfoGraph::new(n, &edges).expect("blocks are contiguous and increasing")
}

pub fn complement_turan(n: usize, r: usize) -> Result<TuranDesign> {
    if r == 0 || r > n {
        return Err(Error::input(format!("need 1 <= r <= n, got n = {n}, r = {r}")));
    }
    let (q, extra) = (n / r, n % r);
    let mut partition = Vec::with_capacity(r);
    let mut next = 0;
    for k in 0..r {
        let size = q + usize::from(k < extra);
        partition.push((next..next + size).collect());
        next += size;
    }
    let graph = blocks_to_graph(n, &partition);
    Ok(TuranDesign { n, r, partition, graph })
}

/// Edge count of the complement Turán graph on `n` nodes with `r` blocks.
/// For `r > n` the surplus blocks are empty and the count is 0.
pub fn edge_count_m(n: usize, r: usize) -> Result<usize> {
    if r == 0 {
        return Err(Error::input("the number of blocks must be positive"));
    }
    let pairs = |s: usize| s * s.saturating_sub(1) / 2;
    let (floor, rem) = (n / r, n % r);
    Ok(rem * pairs(n.div_ceil(r)) + (r - rem) * pairs(floor))
}

/// The complement Turán graph with the fewest blocks that fits in `m` edges.
///
/// A graph with `n` nodes and independence number `r` has at least
/// `n²/(2r) − n/2` edges, so the scan can start at `⌈n²/(2m + n)⌉`.
pub fn t_hat(n: usize, m: usize) -> Result<TuranDesign> {
    if n == 0 {
        return Err(Error::input("need at least one agent"));
    }
    let start = (n * n).div_ceil(2 * m + n).clamp(1, n);
    let mut r = start;
    while edge_count_m(n, r)? > m {
        r += 1;
    }
    complement_turan(n, r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoSiblingWitness {
    pub n: usize,
    pub r: usize,
    pub m_min: usize,
    /// The independent set `J` (the last `r` agents).
    pub independent_set: Vec<usize>,
    #[serde(serialize_with = "graph_as_file")]
    pub graph: InfoGraph,
}

/// Graphs up to this size are re-checked with the exact search after construction.
const WITNESS_CHECK_LIMIT: usize = 12;

/// Fewest edges of a graph on `n` agents with independence number `r` that
/// lacks the Sibling Property, with a graph attaining it.
///
/// `J` is the last `r` agents, left independent. The first `n − r` agents form
/// a complement Turán graph with `r − 1` blocks (edgeless when there are too
/// few of them), and every agent in block `k` feeds `J`'s members `k` and
/// `k + 1`. Staggering the pairs keeps `J` the unique maximum independent set.
pub fn min_edges_no_sibling(n: usize, r: usize) -> Result<NoSiblingWitness> {
    if r < 2 || r >= n {
        return Err(Error::Precondition(format!(
            "need 2 <= r <= n - 1, got n = {n}, r = {r}"
        )));
    }
    let outside = n - r;
    let inner = if outside >= r - 1 {
        complement_turan(outside, r - 1)?
    } else {
        complement_turan(outside, outside)?
    };
    let j: Vec<usize> = (outside..n).collect();
    let mut edges: Vec<(usize, usize)> = inner.graph.edges().collect();
    for (k, block) in inner.partition.iter().enumerate() {
        for &v in block {
            edges.push((v, j[k]));
            edges.push((v, j[k + 1]));
        }
    }
    let graph = InfoGraph::new(n, &edges)?;
    let m_min = edge_count_m(outside, r - 1)? + 2 * outside;
    if graph.edge_count() != m_min {
        return Err(Error::consistency(format!(
            "witness has {} edges, expected {m_min}",
            graph.edge_count()
        )));
    }
    if n <= WITNESS_CHECK_LIMIT {
        let alpha = exact_numbers(&graph)?.alpha;
        if alpha != r || sibling_property(&graph)?.has_property {
            return Err(Error::consistency(format!(
                "witness for n = {n}, r = {r} has α = {alpha} or the Sibling Property"
            )));
        }
    }
    Ok(NoSiblingWitness {
        n,
        r,
        m_min,
        independent_set: j,
        graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    #[test]
    fn turan_8_3() {
        let t = complement_turan(8, 3).unwrap();
        assert_eq!(t.partition, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7]]);
        assert_eq!(t.graph.edge_count(), 7);
        assert_eq!(edge_count_m(8, 3).unwrap(), 7);
    }

    #[test]
    fn turan_extremes() {
        assert_eq!(complement_turan(5, 5).unwrap().graph.edge_count(), 0);
        assert!(complement_turan(5, 1).unwrap().graph.is_complete());
        assert!(complement_turan(5, 6).is_err());
        assert!(complement_turan(5, 0).is_err());
    }

    #[test]
    fn edge_counts() {
        assert_eq!(edge_count_m(10, 3).unwrap(), 12);
        assert_eq!(edge_count_m(10, 2).unwrap(), 20);
        assert_eq!(edge_count_m(7, 7).unwrap(), 0);
        assert_eq!(edge_count_m(2, 5).unwrap(), 0);
    }

    #[test]
    fn t_hat_examples() {
        assert_eq!(t_hat(10, 12).unwrap().r, 3);
        assert_eq!(t_hat(10, 19).unwrap().r, 3);
        assert_eq!(t_hat(10, 20).unwrap().r, 2);
        assert_eq!(t_hat(6, 0).unwrap().r, 6);
    }

    #[test]
    fn t_hat_matches_a_plain_scan() {
        for n in 1..=20 {
            for m in 0..=n * (n - 1) / 2 {
                let scan = (1..=n).find(|&r| edge_count_m(n, r).unwrap() <= m).unwrap();
                assert_eq!(t_hat(n, m).unwrap().r, scan, "n = {n}, m = {m}");
            }
        }
    }

    #[test]
    fn no_sibling_4_2_is_k4_minus_edge() {
        let w = min_edges_no_sibling(4, 2).unwrap();
        assert_eq!(w.m_min, 5);
        assert_eq!(w.graph, fixtures::k4_minus_edge());
    }

    #[test]
    fn no_sibling_10_3() {
        let w = min_edges_no_sibling(10, 3).unwrap();
        assert_eq!(w.m_min, 23);
        assert_eq!(w.graph.edge_count(), 23);
    }

    #[test]
    fn no_sibling_domain() {
        assert!(matches!(min_edges_no_sibling(5, 5), Err(Error::Precondition(_))));
        assert!(matches!(min_edges_no_sibling(5, 1), Err(Error::Precondition(_))));
    }
}
