//! Metropolis-Hastings simulation from the ERGM distribution
//! `P(x) ∝ exp(theta . z(x))`. The normalising constant is never needed.
//!
//! Two proposal kernels are available:
//!
//! * [`Kernel::Basic`] picks a dyad uniformly from the `N_A * N_B` grid and
//!   proposes to toggle it.
//! * [`Kernel::Tnt`] (tie/no-tie) picks, with probability 1/2, a uniformly
//!   chosen existing edge to delete, and otherwise a uniform dyad to toggle.
//!   On an empty graph the edge branch falls through to the dyad branch.
//!   With `E` edges and `D` dyads the probability of proposing a particular
//!   deletion is `1/(2E) + 1/(2D)` and a particular addition `1/(2D)`
//!   (`1/D` when `E = 0`); the acceptance ratio carries the reverse/forward
//!   quotient of these.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::statistics::{model_stats, ChangeScratch, Model, StatVector, Term};

/// Random number generator used by every chain (period `2^256 - 1`).
pub type ChainRng = Xoshiro256PlusPlus;

/// Stream `index` of the generator seeded by `seed`. Streams are `2^128`
/// draws apart, so chains never overlap.
pub fn rng_stream(seed: u64, index: u64) -> ChainRng {
    let mut rng = ChainRng::seed_from_u64(seed);
    for _ in 0..index {
        rng.jump();
    }
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Basic,
    Tnt,
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kernel::Basic => "basic",
            Kernel::Tnt => "tnt",
        })
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kernel> {
        match s.trim().to_ascii_lowercase().as_str() {
            "basic" => Ok(Kernel::Basic),
            "tnt" => Ok(Kernel::Tnt),
            other => Err(Error::InvalidSampler(format!("unknown kernel \"{other}\""))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub kernel: Kernel,
    /// Steps discarded before the first sample.
    pub burn_in: u64,
    /// Steps between retained samples.
    pub interval: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            kernel: Kernel::Tnt,
            burn_in: 100_000,
            interval: 10_000,
            samples: 100,
            seed: 1,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.interval == 0 {
            return Err(Error::InvalidSampler("interval must be at least 1".into()));
        }
        if self.samples == 0 {
            return Err(Error::InvalidSampler("samples must be at least 1".into()));
        }
        Ok(())
    }
}

/// One Metropolis-Hastings chain: a graph, the model coefficients, the
/// running statistic vector and a private random stream.
#[derive(Debug, Clone)]
pub struct Chain {
    graph: BipartiteGraph,
    terms: Vec<Term>,
    theta: Vec<f64>,
    kernel: Kernel,
    rng: ChainRng,
    stats: Vec<f64>,
    delta: Vec<f64>,
    scratch: ChangeScratch,
    proposals: u64,
    accepted: u64,
}

impl Chain {
    pub fn new(graph: BipartiteGraph, model: &Model, kernel: Kernel, rng: ChainRng) -> Chain {
        let stats = model_stats(&graph, model);
        Chain {
            graph,
            terms: model.terms().to_vec(),
            theta: model.theta().to_vec(),
            kernel,
            rng,
            stats,
            delta: vec![0.0; model.len()],
            scratch: ChangeScratch::default(),
            proposals: 0,
            accepted: 0,
        }
    }

    /// One proposal; returns whether it was accepted.
    pub fn step(&mut self) -> bool {
        self.proposals += 1;
        let accepted = propose(
            &mut self.graph,
            &self.terms,
            &self.theta,
            self.kernel,
            &mut self.rng,
            &mut self.scratch,
            &mut self.delta,
        );
        if accepted {
            self.accepted += 1;
            for (s, d) in self.stats.iter_mut().zip(&self.delta) {
                *s += d;
            }
        }
        accepted
    }

    pub fn advance(&mut self, steps: u64) {
        for _ in 0..steps {
            self.step();
        }
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn into_graph(self) -> BipartiteGraph {
        self.graph
    }

    /// Running statistics, updated by the change statistic of every
    /// accepted move.
    pub fn stats(&self) -> &[f64] {
        &self.stats
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn set_theta(&mut self, theta: &[f64]) {
        assert_eq!(theta.len(), self.theta.len());
        self.theta.copy_from_slice(theta);
    }

    /// Replaces the running statistics by a from-scratch evaluation.
    pub fn resync(&mut self) {
        for (s, t) in self.stats.iter_mut().zip(&self.terms) {
            *s = crate::statistics::value_of(&self.graph, t);
        }
    }

    pub fn rng(&mut self) -> &mut ChainRng {
        &mut self.rng
    }

    pub fn proposals(&self) -> u64 {
        self.proposals
    }

    pub fn accepted(&self) -> u64 {
        self.accepted
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.proposals == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposals as f64
        }
    }
}

/// A single Metropolis-Hastings step on `g` under `model`.
pub fn mh_step<R: Rng>(g: &mut BipartiteGraph, model: &Model, kernel: Kernel, rng: &mut R) -> bool {
    let mut scratch = ChangeScratch::default();
    let mut delta = vec![0.0; model.len()];
    propose(g, model.terms(), model.theta(), kernel, rng, &mut scratch, &mut delta)
}

#[inline]
fn add_probability(edges: usize, dyads: f64) -> f64 {
    if edges == 0 {
        1.0 / dyads
    } else {
        0.5 / dyads
    }
}

#[inline]
fn delete_probability(edges: usize, dyads: f64) -> f64 {
    0.5 / edges as f64 + 0.5 / dyads
}

// On acceptance `delta` holds the signed change of every statistic.
fn propose<R: Rng>(
    g: &mut BipartiteGraph,
    terms: &[Term],
    theta: &[f64],
    kernel: Kernel,
    rng: &mut R,
    scratch: &mut ChangeScratch,
    delta: &mut [f64],
) -> bool {
    let dyads = g.dyad_count();
    if dyads == 0 {
        return false;
    }
    let n_b = g.n_b();
    let uniform_dyad = |rng: &mut R| {
        let k = rng.random_range(0..dyads);
        (k / n_b, k % n_b)
    };
    let (a, b, log_q) = match kernel {
        Kernel::Basic => {
            let (a, b) = uniform_dyad(rng);
            (a, b, 0.0)
        }
        Kernel::Tnt => {
            let edges = g.edge_count();
            let pick_edge = rng.random_bool(0.5);
            let (a, b) = if pick_edge && edges > 0 {
                let (a, b) = g.edges()[rng.random_range(0..edges)];
                (a as usize, b as usize)
            } else {
                uniform_dyad(rng)
            };
            let d = dyads as f64;
            let ratio = if g.contains(a, b) {
                add_probability(edges - 1, d) / delete_probability(edges, d)
            } else {
                delete_probability(edges + 1, d) / add_probability(edges, d)
            };
            (a, b, ratio.ln())
        }
    };

    if g.contains(a, b) {
        g.remove_unchecked(a, b);
        scratch.fill(g, terms, a, b, delta);
        let log_ratio = log_q - dot(theta, delta);
        if accept(rng, log_ratio) {
            delta.iter_mut().for_each(|d| *d = -*d);
            true
        } else {
            g.insert_unchecked(a, b);
            false
        }
    } else {
        scratch.fill(g, terms, a, b, delta);
        let log_ratio = log_q + dot(theta, delta);
        if accept(rng, log_ratio) {
            g.insert_unchecked(a, b);
            true
        } else {
            false
        }
    }
}

#[inline]
fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

#[inline]
fn accept<R: Rng>(rng: &mut R, log_ratio: f64) -> bool {
    log_ratio >= 0.0 || rng.random::<f64>() < log_ratio.exp()
}

/// Statistics retained from one chain.
#[derive(Debug, Clone)]
pub struct ChainTrace {
    pub term_names: Vec<String>,
    /// One statistic vector per retained sample.
    pub stats: Vec<StatVector>,
    pub edges: Vec<usize>,
    pub final_graph: Option<BipartiteGraph>,
    pub seed: u64,
    pub stream: u64,
    pub proposals: u64,
    pub accepted: u64,
}

impl ChainTrace {
    pub fn acceptance_rate(&self) -> f64 {
        if self.proposals == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposals as f64
        }
    }

    pub fn len(&self) -> usize {
        self.stats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stats.is_empty()
    }

    /// Values of statistic column `k` across samples.
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.stats.iter().map(|row| row[k]).collect()
    }

    pub fn mean_edges(&self) -> f64 {
        self.edges.iter().sum::<usize>() as f64 / self.edges.len().max(1) as f64
    }

    /// CSV body: `sample,edges,<terms>`, one row per sample.
    pub fn csv_body(&self) -> String {
        let mut out = String::from("sample,edges");
        for name in &self.term_names {
            out.push(',');
            out.push_str(name);
        }
        out.push('\n');
        for (i, (row, edges)) in self.stats.iter().zip(&self.edges).enumerate() {
            write!(out, "{i},{edges}").unwrap();
            for v in row {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// CSV with `#` comment lines echoing the configuration.
    pub fn to_csv(&self, cfg: &SamplerConfig) -> String {
        let mut out = String::new();
        writeln!(out, "# seed = {}", self.seed).unwrap();
        writeln!(out, "# stream = {}", self.stream).unwrap();
        writeln!(out, "# kernel = {}", cfg.kernel).unwrap();
        writeln!(out, "# burn_in = {}", cfg.burn_in).unwrap();
        writeln!(out, "# interval = {}", cfg.interval).unwrap();
        writeln!(out, "# samples = {}", cfg.samples).unwrap();
        writeln!(out, "# acceptance_rate = {}", self.acceptance_rate()).unwrap();
        out.push_str(&self.csv_body());
        out
    }
}

/// Runs one chain from `g0` using stream 0 of `cfg.seed`.
pub fn run_chain(g0: &BipartiteGraph, model: &Model, cfg: &SamplerConfig) -> Result<ChainTrace> {
    run_chain_stream(g0, model, cfg, 0)
}

/// Runs one chain from `g0` using stream `stream` of `cfg.seed`.
pub fn run_chain_stream(
    g0: &BipartiteGraph,
    model: &Model,
    cfg: &SamplerConfig,
    stream: u64,
) -> Result<ChainTrace> {
    cfg.validate()?;
    let mut chain = Chain::new(g0.clone(), model, cfg.kernel, rng_stream(cfg.seed, stream));
    chain.advance(cfg.burn_in);
    let mut stats = Vec::with_capacity(cfg.samples);
    let mut edges = Vec::with_capacity(cfg.samples);
    for _ in 0..cfg.samples {
        chain.advance(cfg.interval);
        // recomputed rather than the running values, so that printed
        // statistics carry no accumulated rounding
        stats.push(model_stats(chain.graph(), model));
        edges.push(chain.graph().edge_count());
    }
    Ok(ChainTrace {
        term_names: model.term_names(),
        stats,
        edges,
        seed: cfg.seed,
        stream,
        proposals: chain.proposals(),
        accepted: chain.accepted(),
        final_graph: Some(chain.into_graph()),
    })
}

/// Runs `chains` independent chains (streams `0..chains`) in parallel.
/// The result is in stream order regardless of scheduling.
pub fn run_chains(
    g0: &BipartiteGraph,
    model: &Model,
    cfg: &SamplerConfig,
    chains: usize,
) -> Result<Vec<ChainTrace>> {
    (0..chains as u64)
        .into_par_iter()
        .map(|stream| run_chain_stream(g0, model, cfg, stream))
        .collect()
}
