//! Goodness of fit: simulate graphs from a fitted model and compare them with
//! the observed graph on degree histograms, edge and four-cycle counts, the
//! cycle-length spectrum and the number of nodes lying on a four-cycle.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Mode, NodeRef};
use crate::sampler::{rng_stream, Chain, SamplerConfig};
use crate::statistics::Model;
use crate::summary;

/// Cap on DFS extensions in [`cycle_census`].
pub const CYCLE_WORK_LIMIT: u64 = 100_000_000;

/// Number of simple cycles of each even length `4..=max_len`.
///
/// Each cycle is found from its least-index vertex, walking only through
/// higher-index vertices, once in each direction. A branch is cut as soon as
/// the walk cannot get back to the root within `max_len` edges.
pub fn cycle_census(g: &BipartiteGraph, max_len: usize) -> Result<BTreeMap<usize, u64>> {
    cycle_census_with_limit(g, max_len, CYCLE_WORK_LIMIT)
}

pub fn cycle_census_with_limit(g: &BipartiteGraph, max_len: usize, limit: u64) -> Result<BTreeMap<usize, u64>> {
    if !matches!(max_len, 4 | 6 | 8 | 10) {
        return Err(Error::InvalidArgument(format!("cycle length {max_len} is not one of 4, 6, 8, 10")));
    }
    // vertices: A-nodes first, then B-nodes
    let n_a = g.n_a();
    let n = n_a + g.n_b();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            if v < n_a {
                g.neighbours_a(v).iter().map(|&b| n_a + b as usize).collect()
            } else {
                g.neighbours_b(v - n_a).iter().map(|&a| a as usize).collect()
            }
        })
        .collect();

    let mut counts = vec![0u64; max_len + 1];
    let mut dist = vec![usize::MAX; n];
    let mut on_path = vec![false; n];
    let mut work = 0u64;
    let mut queue = VecDeque::new();
    for root in 0..n {
        if adj[root].len() < 2 {
            continue;
        }
        // distances back to the root through vertices >= root, as far as
        // any useful walk can reach
        dist[root..].fill(usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            if dist[v] >= max_len / 2 {
                continue;
            }
            for &w in &adj[v] {
                if w > root && dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        on_path[root] = true;
        let mut search = Search {
            adj: &adj,
            dist: &dist,
            on_path: &mut on_path,
            counts: &mut counts,
            root,
            max_len,
            work: &mut work,
            limit,
        };
        search.extend(root, 0)?;
        on_path[root] = false;
    }
    Ok((4..=max_len)
        .step_by(2)
        .map(|len| (len, counts[len] / 2))
        .collect())
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    dist: &'a [usize],
    on_path: &'a mut [bool],
    counts: &'a mut [u64],
    root: usize,
    max_len: usize,
    work: &'a mut u64,
    limit: u64,
}

impl Search<'_> {
    // `v` is the end of a path of `edges` edges from the root
    fn extend(&mut self, v: usize, edges: usize) -> Result<()> {
        for &w in &self.adj[v] {
            if w == self.root {
                if edges + 1 >= 4 {
                    self.counts[edges + 1] += 1;
                }
                continue;
            }
            if w < self.root || self.on_path[w] {
                continue;
            }
            let back = self.dist[w];
            if back == usize::MAX || edges + 1 + back > self.max_len {
                continue;
            }
            *self.work += 1;
            if *self.work > self.limit {
                return Err(Error::WorkLimit(self.limit));
            }
            self.on_path[w] = true;
            self.extend(w, edges + 1)?;
            self.on_path[w] = false;
        }
        Ok(())
    }
}

/// Nodes of each mode that lie on at least one four-cycle.
pub fn unique_nodes_in_four_cycles(g: &BipartiteGraph) -> (usize, usize) {
    let count = |mode: Mode| {
        (0..g.size(mode))
            .filter(|&i| g.c4_at_node(NodeRef { mode, index: i }).unwrap_or(0) > 0)
            .count()
    };
    (count(Mode::A), count(Mode::B))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GofConfig {
    /// `samples` is the number of simulated graphs.
    pub sampler: SamplerConfig,
    pub max_len: usize,
    /// Chains sharing the simulated graphs; fixed so the report does not
    /// depend on the number of worker threads.
    pub chains: usize,
}

impl Default for GofConfig {
    fn default() -> Self {
        GofConfig {
            sampler: SamplerConfig {
                samples: 100,
                burn_in: 100_000,
                interval: 10_000,
                ..SamplerConfig::default()
            },
            max_len: 10,
            chains: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GofRow {
    pub statistic: String,
    pub observed: f64,
    pub sim_mean: f64,
    pub sim_sd: f64,
    pub t_ratio: f64,
    /// 5%, 25%, 50%, 75% and 95% quantiles of the simulated values.
    pub quantiles: [f64; 5],
}

#[derive(Debug, Clone, PartialEq)]
pub struct GofReport {
    pub rows: Vec<GofRow>,
    pub simulations: usize,
}

impl GofReport {
    pub fn row(&self, statistic: &str) -> Option<&GofRow> {
        self.rows.iter().find(|r| r.statistic == statistic)
    }

    pub fn csv_body(&self) -> String {
        let mut out = String::from("statistic,observed,sim_mean,sim_sd,t_ratio,q05,q25,q50,q75,q95\n");
        for r in &self.rows {
            write!(out, "{},{},{},{},{}", r.statistic, r.observed, r.sim_mean, r.sim_sd, r.t_ratio).unwrap();
            for q in r.quantiles {
                write!(out, ",{q}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Layout of the statistic vector compared in a report.
struct Families {
    max_len: usize,
    bins_a: usize,
    bins_b: usize,
}

impl Families {
    fn for_observed(obs: &BipartiteGraph, max_len: usize) -> Families {
        let top = |mode| obs.degrees(mode).into_iter().max().unwrap_or(0);
        Families {
            max_len,
            bins_a: top(Mode::A) + 3,
            bins_b: top(Mode::B) + 3,
        }
    }

    fn names(&self) -> Vec<String> {
        let mut names = vec!["edges".to_string(), "four_cycles".to_string()];
        names.extend((4..=self.max_len).step_by(2).map(|l| format!("cycles_{l}")));
        names.push("unique_a_in_four_cycles".into());
        names.push("unique_b_in_four_cycles".into());
        for (mode, bins) in [("a", self.bins_a), ("b", self.bins_b)] {
            names.extend((0..bins).map(|d| format!("degree_{mode}_{d}")));
            names.push(format!("degree_{mode}_over_{}", bins - 1));
        }
        names
    }

    fn measure(&self, g: &BipartiteGraph) -> Result<Vec<f64>> {
        let mut v = vec![g.edge_count() as f64, g.total_c4() as f64];
        v.extend(cycle_census(g, self.max_len)?.values().map(|&c| c as f64));
        let (ua, ub) = unique_nodes_in_four_cycles(g);
        v.push(ua as f64);
        v.push(ub as f64);
        for (mode, bins) in [(Mode::A, self.bins_a), (Mode::B, self.bins_b)] {
            let mut hist = vec![0.0; bins + 1];
            for d in g.degrees(mode) {
                hist[d.min(bins)] += 1.0;
            }
            v.extend(hist);
        }
        Ok(v)
    }
}

/// Compares `obs` with already simulated graphs.
pub fn gof_from_samples(obs: &BipartiteGraph, sims: &[BipartiteGraph], max_len: usize) -> Result<GofReport> {
    let families = Families::for_observed(obs, max_len);
    let observed = families.measure(obs)?;
    let rows = sims.iter().map(|g| families.measure(g)).collect::<Result<Vec<_>>>()?;
    Ok(report(&families, &observed, &rows))
}

/// Simulates `cfg.sampler.samples` graphs from `model` (chains started at
/// `obs`) and compares them with `obs`.
pub fn gof_run(obs: &BipartiteGraph, model: &Model, cfg: &GofConfig) -> Result<GofReport> {
    cfg.sampler.validate()?;
    if cfg.chains == 0 {
        return Err(Error::InvalidSampler("at least one chain is needed".into()));
    }
    let families = Families::for_observed(obs, cfg.max_len);
    let observed = families.measure(obs)?;
    let n = cfg.sampler.samples;
    let chains = cfg.chains.min(n);
    let parts = (0..chains)
        .into_par_iter()
        .map(|c| {
            let take = n / chains + usize::from(c < n % chains);
            let rng = rng_stream(cfg.sampler.seed, c as u64);
            let mut chain = Chain::new(obs.clone(), model, cfg.sampler.kernel, rng);
            chain.advance(cfg.sampler.burn_in);
            let mut rows = Vec::with_capacity(take);
            for _ in 0..take {
                chain.advance(cfg.sampler.interval);
                rows.push(families.measure(chain.graph())?);
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<Vec<f64>> = parts.into_iter().flatten().collect();
    Ok(report(&families, &observed, &rows))
}

fn report(families: &Families, observed: &[f64], rows: &[Vec<f64>]) -> GofReport {
    let rows_out = families
        .names()
        .into_iter()
        .enumerate()
        .map(|(k, statistic)| {
            let mut col: Vec<f64> = rows.iter().map(|r| r[k]).collect();
            col.sort_by(f64::total_cmp);
            let sim_mean = summary::mean(&col);
            let sim_sd = summary::sd(&col);
            GofRow {
                statistic,
                observed: observed[k],
                sim_mean,
                sim_sd,
                t_ratio: summary::t_ratio(sim_mean, sim_sd, observed[k]),
                quantiles: [0.05, 0.25, 0.5, 0.75, 0.95].map(|q| summary::quantile(&col, q)),
            }
        })
        .collect();
    GofReport {
        rows: rows_out,
        simulations: rows.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ten_cycle_census() {
        let c = cycle_census(&fixtures::ten_cycle(), 10).unwrap();
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(4, 0), (6, 0), (8, 0), (10, 1)]);
    }

    #[test]
    fn complete_two_by_three_census() {
        let c = cycle_census(&fixtures::four_cycles_3(), 6).unwrap();
        assert_eq!(c[&4], 3);
        assert_eq!(c[&6], 0);
        // K(3,3) has nine four-cycles and six Hamiltonian six-cycles
        let c = cycle_census(&fixtures::complete(3, 3), 6).unwrap();
        assert_eq!((c[&4], c[&6]), (9, 6));
    }

    #[test]
    fn census_rejects_bad_lengths_and_budget() {
        assert!(cycle_census(&fixtures::four_cycle(), 5).is_err());
        assert!(cycle_census(&fixtures::four_cycle(), 12).is_err());
        let err = cycle_census_with_limit(&fixtures::complete(5, 5), 10, 100).unwrap_err();
        assert!(matches!(err, Error::WorkLimit(100)));
    }

    #[test]
    fn unique_nodes() {
        assert_eq!(unique_nodes_in_four_cycles(&fixtures::four_fan(3)), (4, 6));
        assert_eq!(unique_nodes_in_four_cycles(&fixtures::nine_star()), (0, 0));
        assert_eq!(unique_nodes_in_four_cycles(&fixtures::four_cycle()), (2, 2));
    }

    #[test]
    fn observed_graph_as_its_own_sample() {
        let g = fixtures::four_fan(2);
        let report = gof_from_samples(&g, &[g.clone()], 6).unwrap();
        assert_eq!(report.simulations, 1);
        for row in &report.rows {
            assert_eq!(row.sim_sd, 0.0);
            assert_eq!(row.t_ratio, 0.0, "{}", row.statistic);
            assert_eq!(row.quantiles, [row.observed; 5]);
        }
        let other = gof_from_samples(&g, &[fixtures::four_fan(3)], 6).unwrap();
        assert_eq!(other.row("edges").unwrap().t_ratio, f64::INFINITY);
    }

    #[test]
    fn degree_bins_with_overflow() {
        let g = fixtures::star_a(3);
        let report = gof_from_samples(&g, &[fixtures::star_a(9)], 4).unwrap();
        // observed max A-degree 3: bins 0..=5 plus an overflow bin
        assert!(report.row("degree_a_5").is_some());
        assert_eq!(report.row("degree_a_over_5").unwrap().sim_mean, 1.0);
        assert_eq!(report.row("degree_a_3").unwrap().observed, 1.0);
    }
}
