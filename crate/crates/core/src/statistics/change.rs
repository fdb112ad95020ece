use crate::graph::BipartiteGraph;
use crate::statistics::{node_power, Term};

/// Reusable buffers for evaluating a model's change statistics at one dyad.
///
/// For the dyad `(a, b)` two neighbourhood views are computed at most once
/// and shared by every term that needs them:
///
/// * `via_a[i] = L2(b, l_i)` for the B-neighbours `l_i` of `a`
///   (two-paths between B-nodes, centred on A-nodes);
/// * `via_b[k] = L2(a, k_i)` for the A-neighbours `k_i` of `b`.
///
/// Adding `(a, b)` creates exactly `sum(via_a) = sum(via_b)` new four-cycles.
#[derive(Debug, Default, Clone)]
pub struct ChangeScratch {
    via_a: Vec<u32>,
    via_b: Vec<u32>,
    have_a: bool,
    have_b: bool,
    // alternating k-two-path deltas already computed for this dyad, keyed by
    // (centred on A?, lambda bits)
    alt: Vec<(bool, u64, f64)>,
}

impl ChangeScratch {
    /// Writes the addition change statistic of every term into `out`.
    ///
    /// The dyad must be absent and in range; this is not checked.
    pub fn fill(&mut self, g: &BipartiteGraph, terms: &[Term], a: usize, b: usize, out: &mut [f64]) {
        debug_assert_eq!(terms.len(), out.len());
        debug_assert!(!g.contains(a, b));
        self.have_a = false;
        self.have_b = false;
        self.alt.clear();
        for (slot, term) in out.iter_mut().zip(terms) {
            *slot = self.term_change(g, term, a, b);
        }
    }

    fn via_a(&mut self, g: &BipartiteGraph, a: usize, b: usize) -> &[u32] {
        if !self.have_a {
            self.via_a.clear();
            self.via_a
                .extend(g.neighbours_a(a).iter().map(|&l| g.l2_b(b, l as usize)));
            self.have_a = true;
        }
        &self.via_a
    }

    fn via_b(&mut self, g: &BipartiteGraph, a: usize, b: usize) -> &[u32] {
        if !self.have_b {
            self.via_b.clear();
            self.via_b
                .extend(g.neighbours_b(b).iter().map(|&k| g.l2_a(a, k as usize)));
            self.have_b = true;
        }
        &self.via_b
    }

    fn new_four_cycles(&mut self, g: &BipartiteGraph, a: usize, b: usize) -> u64 {
        // either side gives the same count; use whichever is already built
        // or the smaller neighbourhood
        let side_a = if self.have_a || self.have_b {
            self.have_a
        } else {
            g.neighbours_a(a).len() <= g.neighbours_b(b).len()
        };
        if side_a {
            self.via_a(g, a, b).iter().map(|&x| x as u64).sum()
        } else {
            self.via_b(g, a, b).iter().map(|&x| x as u64).sum()
        }
    }

    // AltKCyclesA (centred_on_a) or AltKCyclesB delta: each new two-path
    // raises one pair multiplicity from x to x + 1, adding (1 - 1/lambda)^x.
    fn alt_k_cycles(&mut self, g: &BipartiteGraph, centred_on_a: bool, lambda: f64, a: usize, b: usize) -> f64 {
        let key = (centred_on_a, lambda.to_bits());
        if let Some(&(_, _, v)) = self.alt.iter().find(|(c, l, _)| (*c, *l) == key) {
            return v;
        }
        let r = 1.0 - 1.0 / lambda;
        let side = if centred_on_a {
            self.via_a(g, a, b)
        } else {
            self.via_b(g, a, b)
        };
        let v = side.iter().map(|&x| r.powi(x as i32)).sum();
        self.alt.push((key.0, key.1, v));
        v
    }

    fn node_power_a(&mut self, g: &BipartiteGraph, alpha: f64, a: usize, b: usize) -> f64 {
        let created = self.new_four_cycles(g, a, b);
        let c4 = g.c4_slice(crate::graph::Mode::A);
        let own = c4[a];
        let mut delta = node_power(own + created, alpha) - node_power(own, alpha);
        // every other A-node k adjacent to b gains L2(a, k) cycles through k
        let via_b = self.via_b(g, a, b);
        for (&k, &shared) in g.neighbours_b(b).iter().zip(via_b) {
            if shared > 0 {
                let before = c4[k as usize];
                delta += node_power(before + shared as u64, alpha) - node_power(before, alpha);
            }
        }
        delta
    }

    fn node_power_b(&mut self, g: &BipartiteGraph, alpha: f64, a: usize, b: usize) -> f64 {
        let created = self.new_four_cycles(g, a, b);
        let c4 = g.c4_slice(crate::graph::Mode::B);
        let own = c4[b];
        let mut delta = node_power(own + created, alpha) - node_power(own, alpha);
        let via_a = self.via_a(g, a, b);
        for (&l, &shared) in g.neighbours_a(a).iter().zip(via_a) {
            if shared > 0 {
                let before = c4[l as usize];
                delta += node_power(before + shared as u64, alpha) - node_power(before, alpha);
            }
        }
        delta
    }

    fn term_change(&mut self, g: &BipartiteGraph, term: &Term, a: usize, b: usize) -> f64 {
        let deg_a = g.neighbours_a(a).len();
        let deg_b = g.neighbours_b(b).len();
        match *term {
            Term::Edges => 1.0,
            Term::TwoPathsA | Term::B1Star2 => deg_a as f64,
            Term::TwoPathsB | Term::B2Star2 => deg_b as f64,
            Term::AltStarsA(lambda) => lambda * (1.0 - (1.0 - 1.0 / lambda).powi(deg_a as i32)),
            Term::AltStarsB(lambda) => lambda * (1.0 - (1.0 - 1.0 / lambda).powi(deg_b as i32)),
            Term::GwDegreeA(decay) => (1.0 - (-decay).exp()).powi(deg_a as i32),
            Term::GwDegreeB(decay) => (1.0 - (-decay).exp()).powi(deg_b as i32),
            Term::AltKCyclesA(lambda) => self.alt_k_cycles(g, true, lambda, a, b),
            Term::AltKCyclesB(lambda) => self.alt_k_cycles(g, false, lambda, a, b),
            // the degree is taken before the toggle: it counts the two-paths
            // the new edge opens at its own endpoint
            Term::AltK4CyclesA(lambda) => -(self.alt_k_cycles(g, true, lambda, a, b) - deg_a as f64),
            Term::AltK4CyclesB(lambda) => -(self.alt_k_cycles(g, false, lambda, a, b) - deg_b as f64),
            Term::FourCycles => self.new_four_cycles(g, a, b) as f64,
            // A bipartite graph has no node adjacent to both endpoints of an
            // edge, so the one-mode correction term x_kj L2(k, i) vanishes.
            Term::FourCyclesNodePowerA(alpha) => self.node_power_a(g, alpha, a, b),
            Term::FourCyclesNodePowerB(alpha) => self.node_power_b(g, alpha, a, b),
            Term::FourCyclesNodePowerSum(alpha) => {
                self.node_power_a(g, alpha, a, b) + self.node_power_b(g, alpha, a, b)
            }
        }
    }
}
