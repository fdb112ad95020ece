//! Brute-force oracles over a dense adjacency matrix. Nothing here touches
//! the incremental tables of `BipartiteGraph`.
#![allow(dead_code)]

use bipartite_ergm::{BipartiteGraph, Term};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

pub struct Dense {
    pub n_a: usize,
    pub n_b: usize,
    pub x: Vec<Vec<bool>>,
}

impl Dense {
    pub fn of(g: &BipartiteGraph) -> Dense {
        let mut x = vec![vec![false; g.n_b()]; g.n_a()];
        for (a, b) in g.sorted_edges() {
            x[a][b] = true;
        }
        Dense {
            n_a: g.n_a(),
            n_b: g.n_b(),
            x,
        }
    }

    pub fn deg_a(&self, a: usize) -> usize {
        self.x[a].iter().filter(|&&e| e).count()
    }

    pub fn deg_b(&self, b: usize) -> usize {
        (0..self.n_a).filter(|&a| self.x[a][b]).count()
    }

    /// Number of length-2 paths between A-nodes i and k.
    pub fn l2_a(&self, i: usize, k: usize) -> u64 {
        (0..self.n_b).filter(|&h| self.x[i][h] && self.x[k][h]).count() as u64
    }

    pub fn l2_b(&self, j: usize, l: usize) -> u64 {
        (0..self.n_a).filter(|&h| self.x[h][j] && self.x[h][l]).count() as u64
    }

    /// Four-cycles by enumerating quadruples a < a', b < b'.
    pub fn c4_total(&self) -> u64 {
        let mut count = 0;
        for a in 0..self.n_a {
            for a2 in a + 1..self.n_a {
                for b in 0..self.n_b {
                    for b2 in b + 1..self.n_b {
                        if self.x[a][b] && self.x[a][b2] && self.x[a2][b] && self.x[a2][b2] {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    pub fn c4_a(&self, a: usize) -> u64 {
        let mut count = 0;
        for a2 in (0..self.n_a).filter(|&k| k != a) {
            for b in 0..self.n_b {
                for b2 in b + 1..self.n_b {
                    if self.x[a][b] && self.x[a][b2] && self.x[a2][b] && self.x[a2][b2] {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    pub fn c4_b(&self, b: usize) -> u64 {
        let mut count = 0;
        for b2 in (0..self.n_b).filter(|&l| l != b) {
            for a in 0..self.n_a {
                for a2 in a + 1..self.n_a {
                    if self.x[a][b] && self.x[a2][b] && self.x[a][b2] && self.x[a2][b2] {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// Statistic straight from the defining sums.
    pub fn stat(&self, term: &Term) -> f64 {
        let c2 = |d: usize| (d * d.saturating_sub(1) / 2) as f64;
        let pw = |x: u64, alpha: f64| if x == 0 { 0.0 } else { (alpha * (x as f64).ln()).exp() };
        let degs_a: Vec<usize> = (0..self.n_a).map(|a| self.deg_a(a)).collect();
        let degs_b: Vec<usize> = (0..self.n_b).map(|b| self.deg_b(b)).collect();
        let b_pairs = || {
            (0..self.n_b).flat_map(move |j| (j + 1..self.n_b).map(move |l| self.l2_b(j, l)))
        };
        let a_pairs = || {
            (0..self.n_a).flat_map(move |i| (i + 1..self.n_a).map(move |k| self.l2_a(i, k)))
        };
        let alt = |pairs: Vec<u64>, lambda: f64| {
            lambda
                * pairs
                    .iter()
                    .map(|&x| 1.0 - (1.0 - 1.0 / lambda).powf(x as f64))
                    .sum::<f64>()
        };
        let stars = |degs: &[usize], lambda: f64| {
            // sum over k >= 2 of (-1)^k S_k / lambda^(k-2), S_k = sum C(d, k)
            let mut total = 0.0;
            for &d in degs {
                let mut binom = 1.0;
                for k in 1..=d {
                    binom = binom * (d - k + 1) as f64 / k as f64;
                    if k >= 2 {
                        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                        total += sign * binom / lambda.powi(k as i32 - 2);
                    }
                }
            }
            total
        };
        let gwd = |degs: &[usize], decay: f64| {
            decay.exp()
                * degs
                    .iter()
                    .map(|&d| 1.0 - (1.0 - (-decay).exp()).powf(d as f64))
                    .sum::<f64>()
        };
        let sum_a = |alpha: f64| (0..self.n_a).map(|a| pw(self.c4_a(a), alpha)).sum::<f64>();
        let sum_b = |alpha: f64| (0..self.n_b).map(|b| pw(self.c4_b(b), alpha)).sum::<f64>();
        match *term {
            Term::Edges => degs_a.iter().sum::<usize>() as f64,
            Term::TwoPathsA => b_pairs().sum::<u64>() as f64,
            Term::TwoPathsB => a_pairs().sum::<u64>() as f64,
            Term::B1Star2 => degs_a.iter().map(|&d| c2(d)).sum(),
            Term::B2Star2 => degs_b.iter().map(|&d| c2(d)).sum(),
            Term::AltStarsA(l) => stars(&degs_a, l),
            Term::AltStarsB(l) => stars(&degs_b, l),
            Term::GwDegreeA(s) => gwd(&degs_a, s),
            Term::GwDegreeB(s) => gwd(&degs_b, s),
            Term::AltKCyclesA(l) => alt(b_pairs().collect(), l),
            Term::AltKCyclesB(l) => alt(a_pairs().collect(), l),
            Term::AltK4CyclesA(l) => -(alt(b_pairs().collect(), l) - b_pairs().sum::<u64>() as f64),
            Term::AltK4CyclesB(l) => -(alt(a_pairs().collect(), l) - a_pairs().sum::<u64>() as f64),
            Term::FourCycles => self.c4_total() as f64,
            Term::FourCyclesNodePowerA(al) => sum_a(al),
            Term::FourCyclesNodePowerB(al) => sum_b(al),
            Term::FourCyclesNodePowerSum(al) => sum_a(al) + sum_b(al),
        }
    }

    /// Simple cycles of every length up to `max_len`, by extending vertex
    /// sequences over the whole vertex set (A-nodes first, then B-nodes).
    /// Each cycle is recorded once as the set of its vertex sequences'
    /// canonical rotation.
    pub fn cycle_counts(&self, max_len: usize) -> Vec<u64> {
        let n = self.n_a + self.n_b;
        let adj = |u: usize, v: usize| -> bool {
            match (u < self.n_a, v < self.n_a) {
                (true, false) => self.x[u][v - self.n_a],
                (false, true) => self.x[v][u - self.n_a],
                _ => false,
            }
        };
        let mut counts = vec![0u64; max_len + 1];
        let mut seen = std::collections::HashSet::new();
        let mut path = Vec::new();
        fn extend(
            path: &mut Vec<usize>,
            n: usize,
            max_len: usize,
            adj: &dyn Fn(usize, usize) -> bool,
            seen: &mut std::collections::HashSet<Vec<usize>>,
            counts: &mut Vec<u64>,
        ) {
            let len = path.len();
            if len >= 3 && adj(path[len - 1], path[0]) {
                let mut key = path.clone();
                key.sort_unstable();
                // distinct cycles on the same vertex set are told apart by
                // their edge sets
                let mut edges: Vec<(usize, usize)> = (0..len)
                    .map(|i| {
                        let (u, v) = (path[i], path[(i + 1) % len]);
                        (u.min(v), u.max(v))
                    })
                    .collect();
                edges.sort_unstable();
                key.extend(edges.iter().flat_map(|&(u, v)| [u, v]));
                if seen.insert(key) {
                    counts[len] += 1;
                }
            }
            if len == max_len {
                return;
            }
            for v in 0..n {
                if !path.contains(&v) && adj(path[len - 1], v) {
                    path.push(v);
                    extend(path, n, max_len, adj, seen, counts);
                    path.pop();
                }
            }
        }
        for start in 0..n {
            path.push(start);
            extend(&mut path, n, max_len, &adj, &mut seen, &mut counts);
            path.pop();
        }
        counts
    }
}

pub fn rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Random graph with the given edge probability.
pub fn random_graph(rng: &mut impl Rng, n_a: usize, n_b: usize, p: f64) -> BipartiteGraph {
    let mut g = BipartiteGraph::new(n_a, n_b);
    for a in 0..n_a {
        for b in 0..n_b {
            if rng.random_bool(p) {
                g.toggle_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// Every term kind, with a spread of shape parameters.
pub fn all_terms() -> Vec<Term> {
    let mut terms = vec![
        Term::Edges,
        Term::TwoPathsA,
        Term::TwoPathsB,
        Term::B1Star2,
        Term::B2Star2,
        Term::FourCycles,
    ];
    for lambda in [1.5, 2.0, 5.0] {
        terms.extend([
            Term::AltStarsA(lambda),
            Term::AltStarsB(lambda),
            Term::AltKCyclesA(lambda),
            Term::AltKCyclesB(lambda),
            Term::AltK4CyclesA(lambda),
            Term::AltK4CyclesB(lambda),
        ]);
    }
    for decay in [0.0, 0.5, 1.0] {
        terms.extend([Term::GwDegreeA(decay), Term::GwDegreeB(decay)]);
    }
    for alpha in [0.1, 0.2, 0.5, 1.0] {
        terms.extend([
            Term::FourCyclesNodePowerA(alpha),
            Term::FourCyclesNodePowerB(alpha),
            Term::FourCyclesNodePowerSum(alpha),
        ]);
    }
    terms
}

pub fn rel_close(x: f64, y: f64, rel: f64) -> bool {
    (x - y).abs() <= rel * x.abs().max(y.abs()).max(1.0)
}
