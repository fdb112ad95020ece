//! Small reference graphs and the bundled Southern Women network.

use crate::graph::BipartiteGraph;
use crate::io::load_graph_str;

const SOUTHERN_WOMEN: &str = include_str!("../data/southern_women.txt");

/// Number of edges in the Davis Southern Women network.
pub const SOUTHERN_WOMEN_EDGES: usize = 89;

/// Davis' Southern Women network: 18 women (mode A) by 14 events (mode B).
pub fn southern_women() -> BipartiteGraph {
    let g = load_graph_str(SOUTHERN_WOMEN).expect("bundled fixture parses");
    assert_eq!(g.edge_count(), SOUTHERN_WOMEN_EDGES);
    g
}

/// Source text of the bundled Southern Women edge list.
pub fn southern_women_text() -> &'static str {
    SOUTHERN_WOMEN
}

fn build(n_a: usize, n_b: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> BipartiteGraph {
    let edges: Vec<_> = edges.into_iter().collect();
    BipartiteGraph::from_edges(n_a, n_b, &edges).expect("fixture edges are valid")
}

/// One A-node joined to two B-nodes.
pub fn two_path() -> BipartiteGraph {
    build(1, 2, [(0, 0), (0, 1)])
}

pub fn four_cycle() -> BipartiteGraph {
    complete(2, 2)
}

/// Three four-cycles sharing both A-nodes: the complete graph `K_{2,3}`.
pub fn four_cycles_3() -> BipartiteGraph {
    complete(2, 3)
}

pub fn complete(n_a: usize, n_b: usize) -> BipartiteGraph {
    build(n_a, n_b, (0..n_a).flat_map(|a| (0..n_b).map(move |b| (a, b))))
}

/// A single cycle of length `2k` alternating between the modes.
pub fn ring(k: usize) -> BipartiteGraph {
    assert!(k >= 2, "a bipartite ring needs at least two nodes per mode");
    build(k, k, (0..k).flat_map(|i| [(i, i), (i, (i + 1) % k)]))
}

pub fn ten_cycle() -> BipartiteGraph {
    ring(5)
}

/// A star whose hub is A-node 0, with `leaves` B-nodes.
pub fn star_a(leaves: usize) -> BipartiteGraph {
    build(1, leaves, (0..leaves).map(|b| (0, b)))
}

pub fn nine_star() -> BipartiteGraph {
    star_a(9)
}

/// `k` four-cycles sharing the hub A-node 0 and no other node.
///
/// The hub is joined to all `2k` B-nodes; outer A-node `m` (1-based) is
/// joined to B-nodes `2(m-1)` and `2(m-1)+1`.
pub fn four_fan(k: usize) -> BipartiteGraph {
    assert!(k >= 1);
    let hub = (0..2 * k).map(|b| (0, b));
    let outer = (1..=k).flat_map(|m| [(m, 2 * (m - 1)), (m, 2 * (m - 1) + 1)]);
    build(k + 1, 2 * k, hub.chain(outer))
}

/// The path `a0 - b0 - a1 - b1`, one edge short of a four-cycle.
pub fn three_path() -> BipartiteGraph {
    build(2, 2, [(0, 0), (1, 0), (1, 1)])
}
