use std::path::PathBuf;
use std::process::ExitCode;

use bipartite_ergm::experiments::{self, Command, Config};
use bipartite_ergm::Error;
use clap::{Args, Parser, Subcommand};

/// Bipartite ERGM statistics, simulation, estimation and goodness of fit.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Every catalogue statistic of a graph
    Stats(Common),
    /// One MCMC chain, written as a statistic trace
    Simulate(Common),
    /// Parameter sweep over a grid of coefficients
    Sweep(Common),
    /// Sign grid of two terms with unique-node counts
    Interpret(Common),
    /// Fit a model to an observed graph
    Estimate(Common),
    /// Goodness of fit of a model to an observed graph
    Gof(Common),
}

#[derive(Args)]
struct Common {
    /// Graph file (sets the `graph` config key)
    graph: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Start from a built-in config; --config entries override it
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: available cores)
    #[arg(long)]
    workers: Option<usize>,
}

fn exit_code(err: &Error) -> u8 {
    if err.is_numeric() {
        3
    } else {
        2
    }
}

fn build_config(common: &Common) -> Result<Config, Error> {
    let mut cfg = match &common.preset {
        Some(name) => experiments::preset_config(name)?,
        None => Config::default(),
    };
    if let Some(path) = &common.config {
        cfg = cfg.merged(&Config::parse(&std::fs::read_to_string(path)?)?);
    }
    if let Some(graph) = &common.graph {
        cfg.set("graph", graph.as_str())?;
    }
    if let Some(seed) = common.seed {
        cfg.set("seed", seed.to_string())?;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match &cli.command {
        Cmd::Stats(c) => (Command::Stats, c),
        Cmd::Simulate(c) => (Command::Simulate, c),
        Cmd::Sweep(c) => (Command::Sweep, c),
        Cmd::Interpret(c) => (Command::Interpret, c),
        Cmd::Estimate(c) => (Command::Estimate, c),
        Cmd::Gof(c) => (Command::Gof, c),
    };
    if let Some(n) = common.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = build_config(common).and_then(|cfg| experiments::run(command, &cfg));
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = output.render();
    let written = match &common.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
