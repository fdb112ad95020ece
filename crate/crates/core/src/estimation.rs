//! Approximate maximum-likelihood estimation.
//!
//! Two estimators share the same finishing stage:
//!
//! * Equilibrium Expectation (EE): a single chain started at the observed
//!   graph, with the coefficients nudged after every short run of MH steps
//!   by `step_i * sign(dz_i) * dz_i^2`, `dz = z(x) - z(obs)`. The estimate
//!   is the mean of the coefficient path over its second half.
//! * Stochastic approximation in three phases: a covariance probe, Robbins-
//!   Monro subphases with halving gains, and a final diagnostic.
//!
//! Either start is then refined by a few Newton rounds, each simulating a
//! sample at the current `theta` and solving `cov * step = mean - z(obs)`.
//! Convergence is judged on a fresh sample: every `|t_i| < 0.1` with
//! `t_i = (mean_i - z_i(obs)) / sd_i`. Standard errors come from the inverse
//! of the statistics' covariance at the estimate.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::sampler::{rng_stream, Chain, Kernel, SamplerConfig};
use crate::statistics::{model_stats, Model, Term};
use crate::summary;

/// Convergence threshold on every |t-ratio|.
pub const CONVERGENCE_T: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    EquilibriumExpectation,
    StochasticApprox,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::EquilibriumExpectation => "ee",
            Algorithm::StochasticApprox => "sa",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algorithm> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ee" | "equilibrium-expectation" => Ok(Algorithm::EquilibriumExpectation),
            "sa" | "stochastic-approx" | "stochastic-approximation" => Ok(Algorithm::StochasticApprox),
            other => Err(Error::InvalidModel(format!("unknown estimation algorithm \"{other}\""))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimationConfig {
    pub algorithm: Algorithm,
    /// Starting coefficients; by default Edges starts at the logit of the
    /// observed density and everything else at zero.
    pub initial_theta: Option<Vec<f64>>,
    pub ee_step_scale: f64,
    /// Number of EE coefficient updates.
    pub ee_steps: usize,
    /// MH steps between EE updates.
    pub ee_inner: u64,
    /// Draws used by the stochastic-approximation covariance probe.
    pub sa_phase1: usize,
    pub sa_subphases: usize,
    /// Initial Robbins-Monro gain, halved in every subphase.
    pub sa_gain: f64,
    pub newton_rounds: usize,
    pub newton_samples: usize,
    /// Draws for the final convergence check and information matrix
    /// (at least 1000 are always used).
    pub check_samples: usize,
    /// Independent chains sharing each simulated sample. Fixed, so results
    /// do not depend on the number of worker threads.
    pub chains: usize,
    /// Kernel, burn-in, interval and seed of every inner chain; `samples`
    /// is ignored.
    pub sampler: SamplerConfig,
}

impl Default for EstimationConfig {
    fn default() -> Self {
        EstimationConfig {
            algorithm: Algorithm::StochasticApprox,
            initial_theta: None,
            ee_step_scale: 0.001,
            ee_steps: 5000,
            ee_inner: 500,
            sa_phase1: 100,
            sa_subphases: 4,
            sa_gain: 0.1,
            newton_rounds: 8,
            newton_samples: 2000,
            check_samples: 2000,
            chains: 4,
            sampler: SamplerConfig {
                kernel: Kernel::Tnt,
                burn_in: 10_000,
                interval: 1_000,
                samples: 1,
                seed: 1,
            },
        }
    }
}

impl EstimationConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidModel(msg.to_string()));
        if !(self.ee_step_scale > 0.0 && self.ee_step_scale.is_finite()) {
            return bad("ee_step_scale must be positive");
        }
        if !(self.sa_gain > 0.0 && self.sa_gain.is_finite()) {
            return bad("sa_gain must be positive");
        }
        if self.ee_inner == 0 || self.sa_phase1 < 2 || self.newton_samples < 2 || self.chains == 0 {
            return bad("step and sample counts must be positive");
        }
        if self.sampler.interval == 0 {
            return Err(Error::InvalidSampler("interval must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateResult {
    pub term_names: Vec<String>,
    pub theta_hat: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub t_ratios: Vec<f64>,
    pub converged: bool,
    /// Covariance of the statistics at the estimate.
    pub info_matrix: Vec<Vec<f64>>,
    /// The information matrix was singular and a pseudo-inverse was used.
    pub pseudo_inverse: bool,
    pub algorithm: Algorithm,
    pub seed: u64,
    /// Total MH proposals made.
    pub mh_steps: u64,
    pub warnings: Vec<String>,
}

impl EstimateResult {
    /// The fitted model.
    pub fn model(&self, terms: &[Term]) -> Result<Model> {
        Model::new(terms.to_vec(), self.theta_hat.clone())
    }

    pub fn csv_body(&self) -> String {
        let mut out = String::from("term,theta,std_error,t_ratio\n");
        for i in 0..self.theta_hat.len() {
            writeln!(
                out,
                "{},{},{},{}",
                self.term_names[i], self.theta_hat[i], self.std_errors[i], self.t_ratios[i]
            )
            .unwrap();
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# algorithm = {}", self.algorithm).unwrap();
        writeln!(out, "# seed = {}", self.seed).unwrap();
        writeln!(out, "# steps = {}", self.mh_steps).unwrap();
        writeln!(out, "# converged = {}", self.converged).unwrap();
        writeln!(out, "# pseudo_inverse = {}", self.pseudo_inverse).unwrap();
        for w in &self.warnings {
            writeln!(out, "# warning: {w}").unwrap();
        }
        out.push_str(&self.csv_body());
        out
    }
}

/// Edges at the logit of the observed density, everything else zero.
pub fn default_initial_theta(obs: &BipartiteGraph, terms: &[Term]) -> Vec<f64> {
    let p = obs.density().clamp(1e-3, 1.0 - 1e-3);
    terms
        .iter()
        .map(|t| if *t == Term::Edges { (p / (1.0 - p)).ln() } else { 0.0 })
        .collect()
}

/// t-ratios `(mean - z(obs)) / sd` from a chain at `model`'s coefficients,
/// started at `obs` and using `cfg` (including `cfg.samples`). A statistic
/// with zero simulated variance gets `+inf`.
pub fn convergence_check(obs: &BipartiteGraph, model: &Model, cfg: &SamplerConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let observed = model_stats(obs, model);
    let (rows, _) = simulate(obs, model, cfg, cfg.samples, 1, 0);
    Ok(t_ratios(&rows, &observed))
}

fn t_ratios(rows: &[Vec<f64>], observed: &[f64]) -> Vec<f64> {
    (0..observed.len())
        .map(|k| {
            let col: Vec<f64> = rows.iter().map(|r| r[k]).collect();
            let sd = summary::sd(&col);
            if sd > 0.0 {
                (summary::mean(&col) - observed[k]) / sd
            } else {
                f64::INFINITY
            }
        })
        .collect()
}

// `n` draws spread over `chains` chains on streams `stream0..`, each chain
// started at `obs` and burnt in. Rows come back in chain order.
fn simulate(
    obs: &BipartiteGraph,
    model: &Model,
    cfg: &SamplerConfig,
    n: usize,
    chains: usize,
    stream0: u64,
) -> (Vec<Vec<f64>>, u64) {
    let parts: Vec<(Vec<Vec<f64>>, u64)> = (0..chains)
        .into_par_iter()
        .map(|c| {
            let take = n / chains + usize::from(c < n % chains);
            let rng = rng_stream(cfg.seed, stream0 + c as u64);
            let mut chain = Chain::new(obs.clone(), model, cfg.kernel, rng);
            chain.advance(cfg.burn_in);
            let mut rows = Vec::with_capacity(take);
            for _ in 0..take {
                chain.advance(cfg.interval);
                rows.push(chain.stats().to_vec());
            }
            (rows, chain.proposals())
        })
        .collect();
    let steps = parts.iter().map(|p| p.1).sum();
    (parts.into_iter().flat_map(|p| p.0).collect(), steps)
}

fn to_matrix(m: &[Vec<f64>]) -> DMatrix<f64> {
    let p = m.len();
    DMatrix::from_fn(p, p, |i, j| m[i][j])
}

/// Inverse of a covariance matrix: Cholesky when positive definite,
/// otherwise the SVD pseudo-inverse. The flag reports the fallback.
fn invert(cov: &DMatrix<f64>) -> (DMatrix<f64>, bool) {
    if let Some(ch) = cov.clone().cholesky() {
        return (ch.inverse(), false);
    }
    let pinv = cov.clone().pseudo_inverse(1e-12).unwrap_or_else(|_| DMatrix::zeros(cov.nrows(), cov.ncols()));
    (pinv, true)
}

fn is_positive_definite(cov: &DMatrix<f64>) -> bool {
    cov.clone().cholesky().is_some()
}

// Newton step `cov^-1 (mean - obs)`, scaled down so no component exceeds
// `cap` in magnitude.
fn newton_step(cov: &[Vec<f64>], mean: &[f64], observed: &[f64], cap: f64) -> Vec<f64> {
    let (inv, _) = invert(&to_matrix(cov));
    let diff = DVector::from_iterator(mean.len(), mean.iter().zip(observed).map(|(m, o)| m - o));
    let step = inv * diff;
    let largest = step.iter().fold(0.0f64, |acc, s| acc.max(s.abs()));
    let scale = if largest > cap { cap / largest } else { 1.0 };
    step.iter().map(|s| s * scale).collect()
}

struct Estimator<'a> {
    obs: &'a BipartiteGraph,
    terms: Vec<Term>,
    observed: Vec<f64>,
    cfg: &'a EstimationConfig,
    next_stream: u64,
    mh_steps: u64,
}

impl<'a> Estimator<'a> {
    fn model(&self, theta: &[f64]) -> Result<Model> {
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::Numeric(format!("coefficients diverged: {theta:?}")));
        }
        Model::new(self.terms.clone(), theta.to_vec())
    }

    fn stream(&mut self, count: u64) -> u64 {
        let s = self.next_stream;
        self.next_stream += count;
        s
    }

    fn sample(&mut self, theta: &[f64], n: usize) -> Result<Vec<Vec<f64>>> {
        let model = self.model(theta)?;
        let chains = self.cfg.chains.min(n).max(1);
        let stream0 = self.stream(chains as u64);
        let (rows, steps) = simulate(self.obs, &model, &self.cfg.sampler, n, chains, stream0);
        self.mh_steps += steps;
        Ok(rows)
    }

    fn single_chain(&mut self, theta: &[f64]) -> Result<Chain> {
        let model = self.model(theta)?;
        let stream = self.stream(1);
        Ok(Chain::new(
            self.obs.clone(),
            &model,
            self.cfg.sampler.kernel,
            rng_stream(self.cfg.sampler.seed, stream),
        ))
    }

    fn equilibrium_expectation(&mut self, mut theta: Vec<f64>) -> Result<Vec<f64>> {
        let cfg = self.cfg;
        let steps: Vec<f64> = self.observed.iter().map(|z| cfg.ee_step_scale / (z.abs() + 1.0)).collect();
        let mut chain = self.single_chain(&theta)?;
        let mut sum = vec![0.0; theta.len()];
        let mut kept = 0usize;
        for it in 0..cfg.ee_steps {
            chain.advance(cfg.ee_inner);
            for (i, t) in theta.iter_mut().enumerate() {
                let dz = chain.stats()[i] - self.observed[i];
                *t -= (steps[i] * dz.signum() * dz * dz).clamp(-0.1, 0.1);
            }
            chain.set_theta(&theta);
            if it >= cfg.ee_steps / 2 {
                kept += 1;
                sum.iter_mut().zip(&theta).for_each(|(s, t)| *s += t);
            }
        }
        self.mh_steps += chain.proposals();
        if kept == 0 {
            return Ok(theta);
        }
        Ok(sum.into_iter().map(|s| s / kept as f64).collect())
    }

    fn stochastic_approx(&mut self, mut theta: Vec<f64>) -> Result<Vec<f64>> {
        let cfg = self.cfg;
        let p = theta.len();
        // phase 1: derivative probe and a damped Newton step
        let rows = self.sample(&theta, cfg.sa_phase1)?;
        let cov = summary::covariance(&rows);
        let mean = summary::column_means(&rows);
        let step = newton_step(&cov, &mean, &self.observed, 1.0);
        theta.iter_mut().zip(&step).for_each(|(t, s)| *t -= 0.5 * s);
        let d0 = to_matrix(&cov);
        let d0_inv = if is_positive_definite(&d0) {
            invert(&d0).0
        } else {
            DMatrix::from_fn(p, p, |i, j| {
                if i == j && cov[i][i] > 0.0 {
                    1.0 / cov[i][i]
                } else if i == j {
                    1.0
                } else {
                    0.0
                }
            })
        };

        // phase 2: Robbins-Monro subphases on one persistent chain
        let mut chain = self.single_chain(&theta)?;
        chain.advance(cfg.sampler.burn_in);
        let mut gain = cfg.sa_gain;
        for k in 0..cfg.sa_subphases {
            let n_min = (2f64.powf(4.0 * k as f64 / 3.0) * (7 + p) as f64).round() as usize;
            let n_max = n_min + 200;
            let mut prev: Option<Vec<f64>> = None;
            let mut cross = vec![0.0; p];
            let mut sum = vec![0.0; p];
            let mut n = 0;
            while n < n_max {
                chain.advance(cfg.sampler.interval);
                let dz: Vec<f64> = chain.stats().iter().zip(&self.observed).map(|(z, o)| z - o).collect();
                let update = &d0_inv * DVector::from_column_slice(&dz);
                for (t, u) in theta.iter_mut().zip(update.iter()) {
                    *t -= (gain * u).clamp(-1.0, 1.0);
                }
                if theta.iter().any(|t| !t.is_finite()) {
                    return Err(Error::Numeric("stochastic approximation diverged".into()));
                }
                chain.set_theta(&theta);
                if let Some(prev) = &prev {
                    cross.iter_mut().zip(prev.iter().zip(&dz)).for_each(|(c, (a, b))| *c += a * b);
                }
                prev = Some(dz);
                sum.iter_mut().zip(&theta).for_each(|(s, t)| *s += t);
                n += 1;
                if n >= n_min && cross.iter().all(|&c| c < 0.0) {
                    break;
                }
            }
            theta = sum.iter().map(|s| s / n as f64).collect();
            chain.set_theta(&theta);
            gain /= 2.0;
        }
        self.mh_steps += chain.proposals();
        Ok(theta)
    }

    fn newton_rounds(&mut self, mut theta: Vec<f64>) -> Result<Vec<f64>> {
        for _ in 0..self.cfg.newton_rounds {
            let rows = self.sample(&theta, self.cfg.newton_samples)?;
            let t = t_ratios(&rows, &self.observed);
            if t.iter().all(|t| t.abs() < CONVERGENCE_T / 2.0) {
                break;
            }
            let cov = summary::covariance(&rows);
            let mean = summary::column_means(&rows);
            let step = newton_step(&cov, &mean, &self.observed, 1.0);
            theta.iter_mut().zip(&step).for_each(|(t, s)| *t -= s);
            self.model(&theta)?;
        }
        Ok(theta)
    }
}

/// Fits `model`'s terms to `obs`. The coefficients stored in `model` are
/// ignored unless `cfg.initial_theta` is unset and the caller wants the
/// default start.
pub fn estimate(obs: &BipartiteGraph, model: &Model, cfg: &EstimationConfig) -> Result<EstimateResult> {
    cfg.validate()?;
    if model.is_empty() {
        return Err(Error::InvalidModel("model has no terms".into()));
    }
    let terms = model.terms().to_vec();
    let observed = model_stats(obs, model);
    let mut warnings = Vec::new();
    for (term, z) in terms.iter().zip(&observed) {
        if *z == 0.0 {
            warnings.push(format!("observed {term} is zero, at its minimum"));
        }
    }
    if obs.edge_count() == obs.dyad_count() {
        warnings.push("observed graph is complete".into());
    }
    let theta0 = match &cfg.initial_theta {
        Some(t) if t.len() != terms.len() => {
            return Err(Error::InvalidModel(format!(
                "initial theta has {} values for {} terms",
                t.len(),
                terms.len()
            )))
        }
        Some(t) => t.clone(),
        None => default_initial_theta(obs, &terms),
    };

    let mut est = Estimator {
        obs,
        terms: terms.clone(),
        observed: observed.clone(),
        cfg,
        next_stream: 0,
        mh_steps: 0,
    };
    let theta = match cfg.algorithm {
        Algorithm::EquilibriumExpectation => est.equilibrium_expectation(theta0)?,
        Algorithm::StochasticApprox => est.stochastic_approx(theta0)?,
    };
    let theta = est.newton_rounds(theta)?;

    // final diagnostic and information matrix on a fresh sample
    let n = cfg.check_samples.max(1000);
    let mut rows = est.sample(&theta, n)?;
    let mut cov = to_matrix(&summary::covariance(&rows));
    if !is_positive_definite(&cov) {
        rows = est.sample(&theta, 4 * n)?;
        cov = to_matrix(&summary::covariance(&rows));
    }
    let t_ratios = t_ratios(&rows, &observed);
    for (term, t) in terms.iter().zip(&t_ratios) {
        if t.is_infinite() {
            warnings.push(format!("{term} has zero simulated variance"));
        }
    }
    let (inv, pseudo_inverse) = invert(&cov);
    if pseudo_inverse {
        warnings.push("information matrix is singular; standard errors use a pseudo-inverse".into());
    }
    let std_errors = (0..terms.len()).map(|i| inv[(i, i)].max(0.0).sqrt()).collect();
    let converged = t_ratios.iter().all(|t| t.abs() < CONVERGENCE_T);
    let info_matrix = (0..terms.len())
        .map(|i| (0..terms.len()).map(|j| cov[(i, j)]).collect())
        .collect();
    Ok(EstimateResult {
        term_names: model.term_names(),
        theta_hat: theta,
        std_errors,
        t_ratios,
        converged,
        info_matrix,
        pseudo_inverse,
        algorithm: cfg.algorithm,
        seed: cfg.sampler.seed,
        mh_steps: est.mh_steps,
        warnings,
    })
}
