//! Config files, presets and the commands behind the `bpergm` binary.
//!
//! A config is a flat list of `key = value` lines; `#` starts a comment.
//! Models are written as comma-separated `Kind[shape]=theta` tokens:
//!
//! ```text
//! n_a = 30
//! n_b = 20
//! terms = Edges=-3.0
//! sweep_terms = AltK4CyclesB[2], FourCyclesNodePowerB[0.2]
//! theta_from = -1
//! theta_to = 10
//! theta_step = 0.5
//! ```
//!
//! Every command returns a deterministic CSV body. [`RunOutput::render`]
//! prefixes it with `#` manifest lines (command, version, seed, time and the
//! full config echo), and [`Config::from_manifest`] reads the echo back.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimation::{estimate, Algorithm, EstimationConfig};
use crate::fixtures;
use crate::gof::{gof_run, unique_nodes_in_four_cycles, GofConfig};
use crate::graph::BipartiteGraph;
use crate::io;
use crate::sampler::{rng_stream, run_chain, Chain, Kernel, SamplerConfig};
use crate::statistics::{stat_value, Model, Term};
use crate::summary;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Every key understood by some command.
pub const KNOWN_KEYS: &[&str] = &[
    "terms",
    "graph",
    "n_a",
    "n_b",
    "seed",
    "kernel",
    "burn_in",
    "interval",
    "samples",
    "replicates",
    "sweep_terms",
    "sweep_term",
    "sweep_shapes",
    "theta_from",
    "theta_to",
    "theta_step",
    "interpret_terms",
    "interpret_values",
    "algorithm",
    "start",
    "ee_step_scale",
    "ee_steps",
    "ee_inner",
    "sa_phase1",
    "sa_subphases",
    "sa_gain",
    "newton_rounds",
    "newton_samples",
    "check_samples",
    "chains",
    "max_len",
];

const MANIFEST_PREFIX: &str = "# config: ";

#[derive(Debug, Clone, PartialEq, Eq)]
struct Entry {
    key: String,
    value: String,
    line: usize,
}

/// Parsed `key = value` config, in file order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Config {
    entries: Vec<Entry>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(Error::config(line, format!("expected `key = value`, found \"{content}\"")));
            };
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(Error::config(line, format!("unknown key `{key}`")));
            }
            if cfg.entries.iter().any(|e| e.key == key) {
                return Err(Error::config(line, format!("key `{key}` given twice")));
            }
            cfg.entries.push(Entry {
                key: key.to_string(),
                value: value.trim().to_string(),
                line,
            });
        }
        Ok(cfg)
    }

    /// Recovers the config echoed in a rendered output.
    pub fn from_manifest(text: &str) -> Result<Config> {
        let echoed: String = text
            .lines()
            .filter_map(|l| l.strip_prefix(MANIFEST_PREFIX))
            .map(|l| format!("{l}\n"))
            .collect();
        Config::parse(&echoed)
    }

    /// Sets `key`, replacing any earlier value.
    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        if !KNOWN_KEYS.contains(&key) {
            return Err(Error::InvalidArgument(format!("unknown config key `{key}`")));
        }
        let value = value.into();
        match self.entries.iter_mut().find(|e| e.key == key) {
            Some(e) => {
                e.value = value;
                e.line = 0;
            }
            None => self.entries.push(Entry {
                key: key.to_string(),
                value,
                line: 0,
            }),
        }
        Ok(())
    }

    /// `self` with every entry of `over` applied on top.
    pub fn merged(&self, over: &Config) -> Config {
        let mut out = self.clone();
        for e in &over.entries {
            match out.entries.iter_mut().find(|x| x.key == e.key) {
                Some(x) => *x = e.clone(),
                None => out.entries.push(e.clone()),
            }
        }
        out
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entry(key).map(|e| e.value.as_str())
    }

    fn entry(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn bad(&self, key: &str, message: impl std::fmt::Display) -> Error {
        match self.entry(key) {
            Some(e) if e.line > 0 => Error::config(e.line, format!("`{key}`: {message}")),
            _ => Error::InvalidArgument(format!("`{key}`: {message}")),
        }
    }

    fn required(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::InvalidArgument(format!("missing config key `{key}`")))
    }

    pub fn value<T: FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|e| self.bad(key, format!("\"{v}\": {e}"))),
        }
    }

    fn number(&self, key: &str, default: f64) -> Result<f64> {
        let v: f64 = self.value(key, default)?;
        if !v.is_finite() {
            return Err(self.bad(key, "must be finite"));
        }
        Ok(v)
    }

    fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.required(key)?
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<T>().map_err(|e| self.bad(key, format!("\"{s}\": {e}"))))
            .collect()
    }

    fn model(&self) -> Result<Model> {
        Model::parse(self.required("terms")?).map_err(|e| self.bad("terms", e))
    }

    fn sampler(&self, default_kernel: Kernel) -> Result<SamplerConfig> {
        let d = SamplerConfig::default();
        let cfg = SamplerConfig {
            kernel: match self.get("kernel") {
                Some(_) => self.value("kernel", default_kernel)?,
                None => default_kernel,
            },
            burn_in: self.value("burn_in", d.burn_in)?,
            interval: self.value("interval", d.interval)?,
            samples: self.value("samples", d.samples)?,
            seed: self.value("seed", d.seed)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn graph(&self) -> Result<Option<BipartiteGraph>> {
        match self.get("graph") {
            None => Ok(None),
            Some("builtin:southern_women") => Ok(Some(fixtures::southern_women())),
            Some(path) => io::load_graph_file(path).map(Some),
        }
    }

    fn dims(&self) -> Result<(usize, usize)> {
        Ok((self.value("n_a", 0usize)?, self.value("n_b", 0usize)?))
    }

    /// `key = value` lines, in order.
    pub fn echo(&self) -> String {
        self.entries
            .iter()
            .map(|e| format!("{} = {}\n", e.key, e.value))
            .collect()
    }
}

/// Ready-made configs. The `-full` variants run at the original scale and
/// take hours.
pub fn preset(name: &str) -> Option<&'static str> {
    Some(match name {
        "fig4" => FIG4,
        "fig4-full" => FIG4_FULL,
        "fig7" => FIG7,
        "fig7-full" => FIG7_FULL,
        "interpret" => INTERPRET,
        "sw-model1" => SW_MODEL1,
        "sw-model2" => SW_MODEL2,
        "sw-model4" => SW_MODEL4,
        _ => return None,
    })
}

pub fn preset_names() -> &'static [&'static str] {
    &["fig4", "fig4-full", "fig7", "fig7-full", "interpret", "sw-model1", "sw-model2", "sw-model4"]
}

pub fn preset_config(name: &str) -> Result<Config> {
    let text = preset(name).ok_or_else(|| Error::InvalidArgument(format!("unknown preset `{name}`")))?;
    Config::parse(text)
}

const FIG4: &str = "\
# 30x20 sweeps of the four-cycle terms with Edges fixed at -3
n_a = 30
n_b = 20
terms = Edges=-3.0
sweep_terms = AltKCyclesB[2], AltKCyclesB[5], AltK4CyclesB[2], AltK4CyclesB[5], FourCyclesNodePowerB[0.5], FourCyclesNodePowerB[0.2]
theta_from = -1
theta_to = 10
theta_step = 0.5
kernel = basic
burn_in = 100000
interval = 10000
samples = 100
replicates = 1
seed = 4
";

const FIG4_FULL: &str = "\
n_a = 30
n_b = 20
terms = Edges=-3.0
sweep_terms = AltKCyclesB[2], AltKCyclesB[5], AltK4CyclesB[2], AltK4CyclesB[5], FourCyclesNodePowerB[0.5], FourCyclesNodePowerB[0.2]
theta_from = -1
theta_to = 10
theta_step = 0.01
kernel = basic
burn_in = 100000
interval = 10000
samples = 100
replicates = 1
seed = 4
";

const FIG7: &str = "\
# reduced from 750x250: same coefficients, coarser grid, shorter chains
n_a = 150
n_b = 50
terms = Edges=-8.5, AltStarsA[2]=-0.2, AltStarsB[2]=2.0
sweep_terms = AltKCyclesA[2], AltKCyclesA[5], AltKCyclesA[10], FourCyclesNodePowerA[0.1], FourCyclesNodePowerA[0.2], FourCyclesNodePowerA[0.5]
theta_from = -1
theta_to = 2
theta_step = 0.1
kernel = tnt
burn_in = 1000000
interval = 10000
samples = 100
replicates = 1
seed = 7
";

const FIG7_FULL: &str = "\
n_a = 750
n_b = 250
terms = Edges=-8.5, AltStarsA[2]=-0.2, AltStarsB[2]=2.0
sweep_terms = AltKCyclesA[2], AltKCyclesA[5], AltKCyclesA[10], FourCyclesNodePowerA[0.1], FourCyclesNodePowerA[0.2], FourCyclesNodePowerA[0.5]
theta_from = -1
theta_to = 2
theta_step = 0.01
kernel = tnt
burn_in = 10000000
interval = 100000
samples = 100
replicates = 1
seed = 7
";

const INTERPRET: &str = "\
# sign grid of the two per-mode node-power terms on 100x50
n_a = 100
n_b = 50
terms = Edges=-6.0, AltStarsA[2]=-0.4, AltStarsB[2]=1.0
interpret_terms = FourCyclesNodePowerA[0.2], FourCyclesNodePowerB[0.2]
interpret_values = -1.5, 0, 6.5
kernel = tnt
burn_in = 1000000
interval = 20000
samples = 20
replicates = 1
seed = 6
";

const SW_MODEL1: &str = "\
# Southern Women, edges and two-stars; coefficients are the published fit
graph = builtin:southern_women
terms = Edges=-2.07, B1Star2=0.07, B2Star2=0.18
algorithm = sa
kernel = tnt
burn_in = 20000
interval = 1000
samples = 100
max_len = 8
seed = 11
";

const SW_MODEL2: &str = "\
graph = builtin:southern_women
terms = Edges=-0.20, GwDegreeA[1]=-0.83, GwDegreeB[1]=-2.26
algorithm = sa
kernel = tnt
burn_in = 20000
interval = 1000
samples = 100
max_len = 8
seed = 12
";

const SW_MODEL4: &str = "\
graph = builtin:southern_women
terms = Edges=-5.90, GwDegreeA[1]=10.60, GwDegreeB[1]=-6.95, FourCyclesNodePowerB[0.2]=17.30
algorithm = sa
kernel = tnt
burn_in = 20000
interval = 1000
samples = 100
max_len = 8
seed = 14
";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Stats,
    Simulate,
    Sweep,
    Interpret,
    Estimate,
    Gof,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Stats => "stats",
            Command::Simulate => "simulate",
            Command::Sweep => "sweep",
            Command::Interpret => "interpret",
            Command::Estimate => "estimate",
            Command::Gof => "gof",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Command> {
        Ok(match s {
            "stats" => Command::Stats,
            "simulate" => Command::Simulate,
            "sweep" => Command::Sweep,
            "interpret" => Command::Interpret,
            "estimate" => Command::Estimate,
            "gof" => Command::Gof,
            other => return Err(Error::InvalidArgument(format!("unknown command `{other}`"))),
        })
    }
}

/// A command's CSV body plus what is needed to reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub command: Command,
    pub config: Config,
    /// Extra `#` lines, e.g. convergence flags.
    pub notes: Vec<String>,
    pub body: String,
}

impl RunOutput {
    /// Manifest comments followed by the body.
    pub fn render(&self) -> String {
        let started = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let mut out = String::new();
        writeln!(out, "# command = {}", self.command.name()).unwrap();
        writeln!(out, "# version = {VERSION}").unwrap();
        writeln!(out, "# seed = {}", self.config.get("seed").unwrap_or("1")).unwrap();
        writeln!(out, "# unix_time = {started}").unwrap();
        for line in self.config.echo().lines() {
            writeln!(out, "{MANIFEST_PREFIX}{line}").unwrap();
        }
        for note in &self.notes {
            writeln!(out, "# {note}").unwrap();
        }
        out.push_str(&self.body);
        out
    }
}

/// Runs `command` with `cfg`.
pub fn run(command: Command, cfg: &Config) -> Result<RunOutput> {
    let mut notes = Vec::new();
    let body = match command {
        Command::Stats => {
            let g = cfg.graph()?.ok_or_else(|| Error::InvalidArgument("stats needs a graph".into()))?;
            cmd_stats(&g)
        }
        Command::Simulate => cmd_simulate(cfg)?,
        Command::Sweep => {
            let spec = SweepSpec::from_config(cfg)?;
            notes.push("replicate chains use streams (shape index * grid size + theta index) * replicates + replicate of the master seed".into());
            sweep_csv(&run_sweep(&spec)?)
        }
        Command::Interpret => interpret_csv(&run_interpret(&InterpretSpec::from_config(cfg)?)?),
        Command::Estimate => {
            let (g, model, ecfg) = estimate_inputs(cfg)?;
            let fit = estimate(&g, &model, &ecfg)?;
            notes.push(format!("algorithm = {}", fit.algorithm));
            notes.push(format!("steps = {}", fit.mh_steps));
            notes.push(format!("converged = {}", fit.converged));
            notes.push(format!("pseudo_inverse = {}", fit.pseudo_inverse));
            notes.extend(fit.warnings.iter().map(|w| format!("warning: {w}")));
            fit.csv_body()
        }
        Command::Gof => {
            let (g, model, gcfg) = gof_inputs(cfg)?;
            gof_run(&g, &model, &gcfg)?.csv_body()
        }
    };
    Ok(RunOutput {
        command,
        config: cfg.clone(),
        notes,
        body,
    })
}

/// Every catalogue term at its default shape, as `term,value` rows.
pub fn cmd_stats(g: &BipartiteGraph) -> String {
    let mut out = String::from("term,value\n");
    for term in Term::catalogue() {
        let v = stat_value(g, &term).expect("catalogue terms are valid");
        writeln!(out, "{term},{v}").unwrap();
    }
    out
}

/// One chain from the configured graph (or an empty `n_a x n_b` graph).
pub fn cmd_simulate(cfg: &Config) -> Result<String> {
    let model = cfg.model()?;
    let sampler = cfg.sampler(Kernel::Tnt)?;
    let start = match cfg.graph()? {
        Some(g) => g,
        None => {
            let (n_a, n_b) = cfg.dims()?;
            BipartiteGraph::new(n_a, n_b)
        }
    };
    Ok(run_chain(&start, &model, &sampler)?.csv_body())
}

/// Grid `from, from + step, ..., <= to`, rounded to 1e-10 so that printed
/// values do not carry accumulation noise.
pub fn theta_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(from <= to) {
        return Err(Error::InvalidArgument(format!(
            "theta range needs step > 0 and from <= to (from {from}, to {to}, step {step})"
        )));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..n)
        .map(|k| ((from + k as f64 * step) * 1e10).round() / 1e10)
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: Model,
    pub swept: Vec<Term>,
    pub thetas: Vec<f64>,
    pub n_a: usize,
    pub n_b: usize,
    pub sampler: SamplerConfig,
    pub replicates: usize,
}

impl SweepSpec {
    pub fn from_config(cfg: &Config) -> Result<SweepSpec> {
        let swept = if cfg.get("sweep_terms").is_some() {
            cfg.list::<Term>("sweep_terms")?
        } else {
            let kind = cfg.required("sweep_term")?;
            match cfg.get("sweep_shapes") {
                Some(_) => cfg
                    .list::<f64>("sweep_shapes")?
                    .into_iter()
                    .map(|s| Term::from_parts(kind, Some(s)))
                    .collect::<Result<Vec<_>>>(),
                None => Term::from_parts(kind, None).map(|t| vec![t]),
            }
            .map_err(|e| cfg.bad("sweep_term", e))?
        };
        if swept.is_empty() {
            return Err(cfg.bad("sweep_terms", "no terms to sweep"));
        }
        let thetas = theta_grid(
            cfg.number("theta_from", 0.0)?,
            cfg.number("theta_to", 0.0)?,
            cfg.number("theta_step", 1.0)?,
        )
        .map_err(|e| cfg.bad("theta_step", e))?;
        let (n_a, n_b) = cfg.dims()?;
        let base = cfg.model()?;
        for term in &swept {
            base.with_term(*term, 0.0).map_err(|e| cfg.bad("sweep_terms", e))?;
        }
        let replicates = cfg.value("replicates", 1usize)?;
        if replicates == 0 {
            return Err(cfg.bad("replicates", "must be at least 1"));
        }
        Ok(SweepSpec {
            base,
            swept,
            thetas,
            n_a,
            n_b,
            sampler: cfg.sampler(Kernel::Basic)?,
            replicates,
        })
    }
}

/// Summary of all samples at one grid point, pooled over replicates.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub term: Term,
    pub theta: f64,
    pub edges: (f64, f64),
    /// Mean and sd of the swept term's own statistic.
    pub stat: (f64, f64),
    pub four_cycles: (f64, f64),
}

struct Draws {
    edges: Vec<f64>,
    stat: Vec<f64>,
    four_cycles: Vec<f64>,
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let n_theta = spec.thetas.len();
    let jobs: Vec<(usize, usize, usize)> = (0..spec.swept.len())
        .flat_map(|s| (0..n_theta).flat_map(move |t| (0..spec.replicates).map(move |r| (s, t, r))))
        .collect();
    let draws: Vec<Draws> = jobs
        .par_iter()
        .enumerate()
        .map(|(job, &(s, t, _))| {
            let model = spec.base.with_term(spec.swept[s], spec.thetas[t])?;
            let k = model.len() - 1;
            let rng = rng_stream(spec.sampler.seed, job as u64);
            let mut chain = Chain::new(BipartiteGraph::new(spec.n_a, spec.n_b), &model, spec.sampler.kernel, rng);
            chain.advance(spec.sampler.burn_in);
            let mut d = Draws {
                edges: Vec::with_capacity(spec.sampler.samples),
                stat: Vec::with_capacity(spec.sampler.samples),
                four_cycles: Vec::with_capacity(spec.sampler.samples),
            };
            for _ in 0..spec.sampler.samples {
                chain.advance(spec.sampler.interval);
                d.edges.push(chain.graph().edge_count() as f64);
                d.stat.push(crate::statistics::value_of(chain.graph(), &model.terms()[k]));
                d.four_cycles.push(chain.graph().total_c4() as f64);
            }
            Ok(d)
        })
        .collect::<Result<Vec<_>>>()?;

    let pooled = |chunk: &[Draws], f: fn(&Draws) -> &Vec<f64>| {
        let all: Vec<f64> = chunk.iter().flat_map(|d| f(d).iter().copied()).collect();
        (summary::mean(&all), summary::sd(&all))
    };
    Ok(draws
        .chunks(spec.replicates)
        .enumerate()
        .map(|(i, chunk)| SweepRow {
            term: spec.swept[i / n_theta],
            theta: spec.thetas[i % n_theta],
            edges: pooled(chunk, |d| &d.edges),
            stat: pooled(chunk, |d| &d.stat),
            four_cycles: pooled(chunk, |d| &d.four_cycles),
        })
        .collect())
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "term,shape,theta,edges_mean,edges_sd,stat_mean,stat_sd,four_cycles_mean,four_cycles_sd\n",
    );
    for r in rows {
        let shape = r.term.shape().map(|s| s.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.term.kind_name(),
            shape,
            r.theta,
            r.edges.0,
            r.edges.1,
            r.stat.0,
            r.stat.1,
            r.four_cycles.0,
            r.four_cycles.1
        )
        .unwrap();
    }
    out
}

/// Largest change between neighbouring values as a fraction of the full
/// range (0 for a constant series).
pub fn largest_jump_fraction(values: &[f64]) -> f64 {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(hi > lo) {
        return 0.0;
    }
    let jump = values.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max);
    jump / (hi - lo)
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterpretSpec {
    pub base: Model,
    pub terms: [Term; 2],
    pub values: Vec<f64>,
    pub n_a: usize,
    pub n_b: usize,
    pub sampler: SamplerConfig,
    pub replicates: usize,
}

impl InterpretSpec {
    pub fn from_config(cfg: &Config) -> Result<InterpretSpec> {
        let terms = cfg.list::<Term>("interpret_terms")?;
        let [a, b] = terms[..] else {
            return Err(cfg.bad("interpret_terms", "exactly two terms are needed"));
        };
        let base = cfg.model()?;
        base.with_term(a, 0.0)
            .and_then(|m| m.with_term(b, 0.0))
            .map_err(|e| cfg.bad("interpret_terms", e))?;
        let values = cfg.list::<f64>("interpret_values")?;
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(cfg.bad("interpret_values", "need finite values"));
        }
        let (n_a, n_b) = cfg.dims()?;
        let replicates = cfg.value("replicates", 1usize)?;
        if replicates == 0 {
            return Err(cfg.bad("replicates", "must be at least 1"));
        }
        Ok(InterpretSpec {
            base,
            terms: [a, b],
            values,
            n_a,
            n_b,
            sampler: cfg.sampler(Kernel::Tnt)?,
            replicates,
        })
    }
}

/// Means and sds over the simulated networks of one grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpretCell {
    /// e.g. `pos.zero`: first term positive, second zero.
    pub label: String,
    pub theta_a: f64,
    pub theta_b: f64,
    pub networks: usize,
    pub edges: (f64, f64),
    pub stat_a: (f64, f64),
    pub stat_b: (f64, f64),
    pub four_cycles: (f64, f64),
    pub unique_a: (f64, f64),
    pub unique_b: (f64, f64),
}

fn sign_label(v: f64) -> &'static str {
    if v < 0.0 {
        "neg"
    } else if v > 0.0 {
        "pos"
    } else {
        "zero"
    }
}

pub fn run_interpret(spec: &InterpretSpec) -> Result<Vec<InterpretCell>> {
    let cells: Vec<(f64, f64)> = spec
        .values
        .iter()
        .flat_map(|&a| spec.values.iter().map(move |&b| (a, b)))
        .collect();
    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..spec.replicates).map(move |r| (c, r)))
        .collect();
    // per job: rows of (edges, stat_a, stat_b, C4, unique A, unique B)
    let draws: Vec<Vec<[f64; 6]>> = jobs
        .par_iter()
        .enumerate()
        .map(|(job, &(c, _))| {
            let (ta, tb) = cells[c];
            let model = spec.base.with_term(spec.terms[0], ta)?.with_term(spec.terms[1], tb)?;
            let k = spec.base.len();
            let rng = rng_stream(spec.sampler.seed, job as u64);
            let mut chain = Chain::new(BipartiteGraph::new(spec.n_a, spec.n_b), &model, spec.sampler.kernel, rng);
            chain.advance(spec.sampler.burn_in);
            let mut rows = Vec::with_capacity(spec.sampler.samples);
            for _ in 0..spec.sampler.samples {
                chain.advance(spec.sampler.interval);
                let g = chain.graph();
                let (ua, ub) = unique_nodes_in_four_cycles(g);
                rows.push([
                    g.edge_count() as f64,
                    crate::statistics::value_of(g, &model.terms()[k]),
                    crate::statistics::value_of(g, &model.terms()[k + 1]),
                    g.total_c4() as f64,
                    ua as f64,
                    ub as f64,
                ]);
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(draws
        .chunks(spec.replicates)
        .zip(&cells)
        .map(|(chunk, &(ta, tb))| {
            let rows: Vec<&[f64; 6]> = chunk.iter().flatten().collect();
            let col = |k: usize| {
                let xs: Vec<f64> = rows.iter().map(|r| r[k]).collect();
                (summary::mean(&xs), summary::sd(&xs))
            };
            InterpretCell {
                label: format!("{}.{}", sign_label(ta), sign_label(tb)),
                theta_a: ta,
                theta_b: tb,
                networks: rows.len(),
                edges: col(0),
                stat_a: col(1),
                stat_b: col(2),
                four_cycles: col(3),
                unique_a: col(4),
                unique_b: col(5),
            }
        })
        .collect())
}

pub fn interpret_csv(cells: &[InterpretCell]) -> String {
    let mut out = String::from(
        "cell,theta_a,theta_b,networks,edges_mean,edges_sd,stat_a_mean,stat_a_sd,stat_b_mean,stat_b_sd,\
four_cycles_mean,four_cycles_sd,unique_a_mean,unique_a_sd,unique_b_mean,unique_b_sd\n",
    );
    for c in cells {
        write!(out, "{},{},{},{}", c.label, c.theta_a, c.theta_b, c.networks).unwrap();
        for (m, s) in [c.edges, c.stat_a, c.stat_b, c.four_cycles, c.unique_a, c.unique_b] {
            write!(out, ",{m},{s}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn observed_graph(cfg: &Config) -> Result<BipartiteGraph> {
    cfg.graph()?
        .ok_or_else(|| Error::InvalidArgument("missing config key `graph`".into()))
}

/// Observed graph, model and estimator settings from a config.
pub fn estimate_inputs(cfg: &Config) -> Result<(BipartiteGraph, Model, EstimationConfig)> {
    let g = observed_graph(cfg)?;
    let model = cfg.model()?;
    let d = EstimationConfig::default();
    let initial_theta = match cfg.get("start").unwrap_or("default") {
        "default" => None,
        "terms" => Some(model.theta().to_vec()),
        other => return Err(cfg.bad("start", format!("expected `default` or `terms`, found \"{other}\""))),
    };
    let ecfg = EstimationConfig {
        algorithm: cfg.value("algorithm", Algorithm::StochasticApprox)?,
        initial_theta,
        ee_step_scale: cfg.number("ee_step_scale", d.ee_step_scale)?,
        ee_steps: cfg.value("ee_steps", d.ee_steps)?,
        ee_inner: cfg.value("ee_inner", d.ee_inner)?,
        sa_phase1: cfg.value("sa_phase1", d.sa_phase1)?,
        sa_subphases: cfg.value("sa_subphases", d.sa_subphases)?,
        sa_gain: cfg.number("sa_gain", d.sa_gain)?,
        newton_rounds: cfg.value("newton_rounds", d.newton_rounds)?,
        newton_samples: cfg.value("newton_samples", d.newton_samples)?,
        check_samples: cfg.value("check_samples", d.check_samples)?,
        chains: cfg.value("chains", d.chains)?,
        sampler: SamplerConfig {
            kernel: cfg.value("kernel", d.sampler.kernel)?,
            burn_in: cfg.value("burn_in", d.sampler.burn_in)?,
            interval: cfg.value("interval", d.sampler.interval)?,
            samples: 1,
            seed: cfg.value("seed", d.sampler.seed)?,
        },
    };
    ecfg.validate()?;
    Ok((g, model, ecfg))
}

/// Observed graph, model (with its coefficients) and GOF settings.
pub fn gof_inputs(cfg: &Config) -> Result<(BipartiteGraph, Model, GofConfig)> {
    let g = observed_graph(cfg)?;
    let model = cfg.model()?;
    let d = GofConfig::default();
    let gcfg = GofConfig {
        sampler: cfg.sampler(Kernel::Tnt)?,
        max_len: cfg.value("max_len", d.max_len)?,
        chains: cfg.value("chains", d.chains)?,
    };
    Ok((g, model, gcfg))
}
