//! ERGM term catalogue: full statistics and exact change statistics.
//!
//! Every change statistic is the difference `z(g + (a, b)) - z(g)` for a dyad
//! that is absent in `g`. Deletions are handled by callers: remove the edge,
//! evaluate the addition delta, negate.

mod change;
mod model;
mod term;

pub use change::ChangeScratch;
pub use model::Model;
pub use term::{ShapeKind, Term};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Mode};

/// Full statistic vector `z(x)`, aligned with a model's terms.
pub type StatVector = Vec<f64>;

/// Toggle delta `z(x + e) - z(x)`, aligned with a model's terms.
pub type ChangeVector = Vec<f64>;

/// `x^alpha` with `0^alpha = 0`.
#[inline]
pub(crate) fn node_power(x: u64, alpha: f64) -> f64 {
    if x == 0 {
        0.0
    } else if alpha == 1.0 {
        x as f64
    } else {
        (x as f64).powf(alpha)
    }
}

#[inline]
fn choose2(d: usize) -> f64 {
    (d * d.saturating_sub(1) / 2) as f64
}

pub fn stat_value(g: &BipartiteGraph, term: &Term) -> Result<f64> {
    term.validate()?;
    Ok(value_of(g, term))
}

pub(crate) fn value_of(g: &BipartiteGraph, term: &Term) -> f64 {
    match *term {
        Term::Edges => g.edge_count() as f64,
        Term::TwoPathsA | Term::B1Star2 => degree_sum(g, Mode::A, choose2),
        Term::TwoPathsB | Term::B2Star2 => degree_sum(g, Mode::B, choose2),
        Term::AltStarsA(lambda) => alt_stars(g, Mode::A, lambda),
        Term::AltStarsB(lambda) => alt_stars(g, Mode::B, lambda),
        Term::GwDegreeA(decay) => gw_degree(g, Mode::A, decay),
        Term::GwDegreeB(decay) => gw_degree(g, Mode::B, decay),
        // centred on A means the two-paths join pairs of B-nodes
        Term::AltKCyclesA(lambda) => alt_k_cycles(g, Mode::B, lambda),
        Term::AltKCyclesB(lambda) => alt_k_cycles(g, Mode::A, lambda),
        Term::AltK4CyclesA(lambda) => alt_k4_cycles(g, Mode::B, lambda),
        Term::AltK4CyclesB(lambda) => alt_k4_cycles(g, Mode::A, lambda),
        Term::FourCycles => g.total_c4() as f64,
        Term::FourCyclesNodePowerA(alpha) => node_power_sum(g, Mode::A, alpha),
        Term::FourCyclesNodePowerB(alpha) => node_power_sum(g, Mode::B, alpha),
        Term::FourCyclesNodePowerSum(alpha) => {
            node_power_sum(g, Mode::A, alpha) + node_power_sum(g, Mode::B, alpha)
        }
    }
}

fn degree_sum(g: &BipartiteGraph, mode: Mode, f: impl Fn(usize) -> f64) -> f64 {
    g.degrees(mode).into_iter().map(f).sum()
}

fn alt_stars(g: &BipartiteGraph, mode: Mode, lambda: f64) -> f64 {
    let r = 1.0 - 1.0 / lambda;
    lambda
        * lambda
        * degree_sum(g, mode, |d| r.powi(d as i32) - 1.0 + d as f64 / lambda)
}

fn gw_degree(g: &BipartiteGraph, mode: Mode, decay: f64) -> f64 {
    let r = 1.0 - (-decay).exp();
    decay.exp() * degree_sum(g, mode, |d| 1.0 - r.powi(d as i32))
}

// Sum over unordered pairs of `pair_mode` nodes.
fn alt_k_cycles(g: &BipartiteGraph, pair_mode: Mode, lambda: f64) -> f64 {
    let r = 1.0 - 1.0 / lambda;
    let mut total = 0.0;
    for u in 0..g.size(pair_mode) {
        let node = crate::graph::NodeRef { mode: pair_mode, index: u };
        for (v, l2) in g.l2_partners(node) {
            if v > u {
                total += 1.0 - r.powi(l2 as i32);
            }
        }
    }
    lambda * total
}

// Equals TwoPaths minus AltKCycles; summed per pair so that pairs with a
// single two-path contribute exactly zero.
fn alt_k4_cycles(g: &BipartiteGraph, pair_mode: Mode, lambda: f64) -> f64 {
    let r = 1.0 - 1.0 / lambda;
    let mut total = 0.0;
    for u in 0..g.size(pair_mode) {
        let node = crate::graph::NodeRef { mode: pair_mode, index: u };
        for (v, l2) in g.l2_partners(node) {
            if v > u && l2 >= 2 {
                total += l2 as f64 - lambda * (1.0 - r.powi(l2 as i32));
            }
        }
    }
    total
}

fn node_power_sum(g: &BipartiteGraph, mode: Mode, alpha: f64) -> f64 {
    g.c4_slice(mode).iter().map(|&c| node_power(c, alpha)).sum()
}

/// Change statistic for adding the absent dyad `(a, b)`.
pub fn change_value(g: &BipartiteGraph, term: &Term, a: usize, b: usize) -> Result<f64> {
    term.validate()?;
    check_absent(g, a, b)?;
    let mut scratch = ChangeScratch::default();
    let mut out = [0.0];
    scratch.fill(g, std::slice::from_ref(term), a, b, &mut out);
    Ok(out[0])
}

pub fn model_stats(g: &BipartiteGraph, model: &Model) -> StatVector {
    model.terms().iter().map(|t| value_of(g, t)).collect()
}

pub fn model_change(g: &BipartiteGraph, model: &Model, a: usize, b: usize) -> Result<ChangeVector> {
    check_absent(g, a, b)?;
    let mut out = vec![0.0; model.len()];
    ChangeScratch::default().fill(g, model.terms(), a, b, &mut out);
    Ok(out)
}

fn check_absent(g: &BipartiteGraph, a: usize, b: usize) -> Result<()> {
    if g.has_edge(a, b)? {
        Err(Error::EdgePresent(a, b))
    } else {
        Ok(())
    }
}

/// Unnormalised log-probability `theta . z(x)`.
pub fn log_weight(g: &BipartiteGraph, model: &Model) -> f64 {
    model_stats(g, model)
        .iter()
        .zip(model.theta())
        .map(|(z, t)| z * t)
        .sum()
}
