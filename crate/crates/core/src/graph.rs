//! Two-mode graph storage.
//!
//! Besides the adjacency lists, the graph keeps the two-path multiplicity
//! `L2(u, v)` for every pair of same-mode nodes that share at least one
//! neighbour, and the number of four-cycles through every node. Both are
//! updated in `O(deg(a) + deg(b))` on every edge toggle, which is what makes
//! the change statistics cheap enough to sit inside an MCMC loop.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// One of the two disjoint node sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    A,
    B,
}

impl Mode {
    pub fn other(self) -> Mode {
        match self {
            Mode::A => Mode::B,
            Mode::B => Mode::A,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::A => f.write_str("A"),
            Mode::B => f.write_str("B"),
        }
    }
}

/// A node addressed by its mode and zero-based index within that mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeRef {
    pub mode: Mode,
    pub index: usize,
}

impl NodeRef {
    pub fn a(index: usize) -> Self {
        NodeRef { mode: Mode::A, index }
    }

    pub fn b(index: usize) -> Self {
        NodeRef { mode: Mode::B, index }
    }
}

type PartnerRow = FxHashMap<u32, u32>;

/// Mutable bipartite graph with incrementally maintained two-path tables.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    n_a: usize,
    n_b: usize,
    // sorted neighbour lists
    adj_a: Vec<Vec<u32>>,
    adj_b: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
    edge_slot: FxHashMap<(u32, u32), usize>,
    // pair_a[i][k] = L2(i, k) for A-nodes i != k, two-paths through B-nodes.
    // pair_b[j][l] = L2(j, l) for B-nodes, two-paths through A-nodes.
    // Both rows of a pair carry the entry; zero entries are never stored.
    pair_a: Vec<PartnerRow>,
    pair_b: Vec<PartnerRow>,
    c4_a: Vec<u64>,
    c4_b: Vec<u64>,
    c4_total: u64,
}

impl BipartiteGraph {
    pub fn new(n_a: usize, n_b: usize) -> Self {
        BipartiteGraph {
            n_a,
            n_b,
            adj_a: vec![Vec::new(); n_a],
            adj_b: vec![Vec::new(); n_b],
            edges: Vec::new(),
            edge_slot: FxHashMap::default(),
            pair_a: vec![PartnerRow::default(); n_a],
            pair_b: vec![PartnerRow::default(); n_b],
            c4_a: vec![0; n_a],
            c4_b: vec![0; n_b],
            c4_total: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting duplicates.
    pub fn from_edges(n_a: usize, n_b: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = BipartiteGraph::new(n_a, n_b);
        for &(a, b) in edges {
            if g.has_edge(a, b)? {
                return Err(Error::EdgePresent(a, b));
            }
            g.toggle_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn size(&self, mode: Mode) -> usize {
        match mode {
            Mode::A => self.n_a,
            Mode::B => self.n_b,
        }
    }

    /// Number of dyads `N_A * N_B`.
    pub fn dyad_count(&self) -> usize {
        self.n_a * self.n_b
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn density(&self) -> f64 {
        if self.dyad_count() == 0 {
            0.0
        } else {
            self.edge_count() as f64 / self.dyad_count() as f64
        }
    }

    /// Edges in insertion order (the order changes as edges are removed).
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Edges sorted by `(a, b)`.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b)| (a as usize, b as usize))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn neighbours(&self, node: NodeRef) -> &[u32] {
        match node.mode {
            Mode::A => &self.adj_a[node.index],
            Mode::B => &self.adj_b[node.index],
        }
    }

    /// B-neighbours of an A-node.
    #[inline]
    pub fn neighbours_a(&self, a: usize) -> &[u32] {
        &self.adj_a[a]
    }

    /// A-neighbours of a B-node.
    #[inline]
    pub fn neighbours_b(&self, b: usize) -> &[u32] {
        &self.adj_b[b]
    }

    #[inline]
    pub fn degree(&self, node: NodeRef) -> usize {
        self.neighbours(node).len()
    }

    pub fn degrees(&self, mode: Mode) -> Vec<usize> {
        match mode {
            Mode::A => self.adj_a.iter().map(Vec::len).collect(),
            Mode::B => self.adj_b.iter().map(Vec::len).collect(),
        }
    }

    fn check_dyad(&self, a: usize, b: usize) -> Result<()> {
        if a >= self.n_a {
            return Err(Error::IndexOutOfRange {
                mode: Mode::A,
                index: a,
                size: self.n_a,
            });
        }
        if b >= self.n_b {
            return Err(Error::IndexOutOfRange {
                mode: Mode::B,
                index: b,
                size: self.n_b,
            });
        }
        Ok(())
    }

    fn check_node(&self, node: NodeRef) -> Result<()> {
        let size = self.size(node.mode);
        if node.index >= size {
            return Err(Error::IndexOutOfRange {
                mode: node.mode,
                index: node.index,
                size,
            });
        }
        Ok(())
    }

    pub fn has_edge(&self, a: usize, b: usize) -> Result<bool> {
        self.check_dyad(a, b)?;
        Ok(self.contains(a, b))
    }

    /// Unchecked presence test for hot loops.
    #[inline]
    pub(crate) fn contains(&self, a: usize, b: usize) -> bool {
        let (row_a, row_b) = (&self.adj_a[a], &self.adj_b[b]);
        if row_a.len() <= row_b.len() {
            row_a.binary_search(&(b as u32)).is_ok()
        } else {
            row_b.binary_search(&(a as u32)).is_ok()
        }
    }

    /// Flips the dyad `(a, b)` and returns whether the edge is now present.
    pub fn toggle_edge(&mut self, a: usize, b: usize) -> Result<bool> {
        self.check_dyad(a, b)?;
        if self.contains(a, b) {
            self.remove_unchecked(a, b);
            Ok(false)
        } else {
            self.insert_unchecked(a, b);
            Ok(true)
        }
    }

    pub(crate) fn insert_unchecked(&mut self, a: usize, b: usize) {
        let (a32, b32) = (a as u32, b as u32);
        // new two-paths b - a - b' and a - b - a'
        for k in 0..self.adj_a[a].len() {
            let other = self.adj_a[a][k];
            bump_up(&mut self.pair_b, &mut self.c4_b, b32, other);
        }
        for k in 0..self.adj_b[b].len() {
            let other = self.adj_b[b][k];
            let before = bump_up(&mut self.pair_a, &mut self.c4_a, a32, other);
            self.c4_total += before as u64;
        }
        let pos = self.adj_a[a].binary_search(&b32).unwrap_err();
        self.adj_a[a].insert(pos, b32);
        let pos = self.adj_b[b].binary_search(&a32).unwrap_err();
        self.adj_b[b].insert(pos, a32);
        self.edge_slot.insert((a32, b32), self.edges.len());
        self.edges.push((a32, b32));
    }

    pub(crate) fn remove_unchecked(&mut self, a: usize, b: usize) {
        let (a32, b32) = (a as u32, b as u32);
        let pos = self.adj_a[a].binary_search(&b32).expect("edge present");
        self.adj_a[a].remove(pos);
        let pos = self.adj_b[b].binary_search(&a32).expect("edge present");
        self.adj_b[b].remove(pos);
        for k in 0..self.adj_a[a].len() {
            let other = self.adj_a[a][k];
            bump_down(&mut self.pair_b, &mut self.c4_b, b32, other);
        }
        for k in 0..self.adj_b[b].len() {
            let other = self.adj_b[b][k];
            let after = bump_down(&mut self.pair_a, &mut self.c4_a, a32, other);
            self.c4_total -= after as u64;
        }
        let slot = self.edge_slot.remove(&(a32, b32)).expect("edge present");
        self.edges.swap_remove(slot);
        if slot < self.edges.len() {
            let moved = self.edges[slot];
            self.edge_slot.insert(moved, slot);
        }
    }

    /// Two-path multiplicity between two distinct same-mode nodes.
    pub fn l2(&self, u: NodeRef, v: NodeRef) -> Result<u32> {
        if u.mode != v.mode {
            return Err(Error::MixedMode);
        }
        if u.index == v.index {
            return Err(Error::SameNode);
        }
        self.check_node(u)?;
        self.check_node(v)?;
        Ok(match u.mode {
            Mode::A => self.l2_a(u.index, v.index),
            Mode::B => self.l2_b(u.index, v.index),
        })
    }

    /// `L2` between two A-nodes (paths through B-nodes).
    #[inline]
    pub fn l2_a(&self, i: usize, k: usize) -> u32 {
        self.pair_a[i].get(&(k as u32)).copied().unwrap_or(0)
    }

    /// `L2` between two B-nodes (paths through A-nodes).
    #[inline]
    pub fn l2_b(&self, j: usize, l: usize) -> u32 {
        self.pair_b[j].get(&(l as u32)).copied().unwrap_or(0)
    }

    /// Same-mode partners of `u` with nonzero `L2`, in unspecified order.
    pub fn l2_partners(&self, u: NodeRef) -> impl Iterator<Item = (usize, u32)> + '_ {
        let row = match u.mode {
            Mode::A => &self.pair_a[u.index],
            Mode::B => &self.pair_b[u.index],
        };
        row.iter().map(|(&k, &v)| (k as usize, v))
    }

    /// Every unordered same-mode pair with nonzero `L2`, as `(u, v, L2)` with `u < v`.
    pub fn l2_pairs(&self, mode: Mode) -> Vec<(usize, usize, u32)> {
        let rows = match mode {
            Mode::A => &self.pair_a,
            Mode::B => &self.pair_b,
        };
        let mut out = Vec::new();
        for (u, row) in rows.iter().enumerate() {
            for (&v, &count) in row {
                if (v as usize) > u {
                    out.push((u, v as usize, count));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Number of four-cycles containing `u`.
    pub fn c4_at_node(&self, u: NodeRef) -> Result<u64> {
        self.check_node(u)?;
        Ok(self.c4_of(u.mode, u.index))
    }

    #[inline]
    pub(crate) fn c4_of(&self, mode: Mode, index: usize) -> u64 {
        match mode {
            Mode::A => self.c4_a[index],
            Mode::B => self.c4_b[index],
        }
    }

    pub(crate) fn c4_slice(&self, mode: Mode) -> &[u64] {
        match mode {
            Mode::A => &self.c4_a,
            Mode::B => &self.c4_b,
        }
    }

    /// Total number of four-cycles.
    pub fn total_c4(&self) -> u64 {
        self.c4_total
    }

    /// The same graph with the roles of the two modes exchanged.
    pub fn transposed(&self) -> BipartiteGraph {
        let mut g = BipartiteGraph::new(self.n_b, self.n_a);
        for (a, b) in self.sorted_edges() {
            g.insert_unchecked(b, a);
        }
        g
    }

    /// Removes every edge, keeping the node sets.
    pub fn clear(&mut self) {
        *self = BipartiteGraph::new(self.n_a, self.n_b);
    }
}

// Increments L2(u, v) and returns the value before the increment.
#[inline]
fn bump_up(rows: &mut [PartnerRow], c4: &mut [u64], u: u32, v: u32) -> u32 {
    let entry = rows[u as usize].entry(v).or_insert(0);
    let before = *entry;
    *entry += 1;
    *rows[v as usize].entry(u).or_insert(0) += 1;
    // C(x + 1, 2) - C(x, 2) = x new four-cycles through both endpoints
    c4[u as usize] += before as u64;
    c4[v as usize] += before as u64;
    before
}

// Decrements L2(u, v) and returns the value after the decrement.
#[inline]
fn bump_down(rows: &mut [PartnerRow], c4: &mut [u64], u: u32, v: u32) -> u32 {
    let after = {
        let entry = rows[u as usize].get_mut(&v).expect("pair present");
        *entry -= 1;
        *entry
    };
    if after == 0 {
        rows[u as usize].remove(&v);
        rows[v as usize].remove(&u);
    } else {
        *rows[v as usize].get_mut(&u).expect("pair present") -= 1;
    }
    c4[u as usize] -= after as u64;
    c4[v as usize] -= after as u64;
    after
}

impl PartialEq for BipartiteGraph {
    /// Structural equality; the internal edge order is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n_a == other.n_a
            && self.n_b == other.n_b
            && self.adj_a == other.adj_a
            && self.adj_b == other.adj_b
            && self.pair_a == other.pair_a
            && self.pair_b == other.pair_b
            && self.c4_a == other.c4_a
            && self.c4_b == other.c4_b
            && self.c4_total == other.c4_total
    }
}

impl Eq for BipartiteGraph {}
