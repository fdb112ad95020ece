//! An Edges-only chain on an empty 30x20 graph. The stationary density is
//! 1 / (1 + e^3), which the sample mean should reproduce.
//!
//! Pass a path to also write the trace CSV.

use bipartite_ergm::sampler::{run_chain, Kernel, SamplerConfig};
use bipartite_ergm::statistics::{Model, Term};
use bipartite_ergm::BipartiteGraph;

fn main() {
    let model = Model::new(vec![Term::Edges], vec![-3.0]).unwrap();
    let cfg = SamplerConfig {
        kernel: Kernel::Basic,
        burn_in: 100_000,
        interval: 10_000,
        samples: 100,
        seed: 1,
    };
    let trace = run_chain(&BipartiteGraph::new(30, 20), &model, &cfg).unwrap();
    let density = trace.mean_edges() / 600.0;
    println!("mean density   {density:.5}");
    println!("analytic       {:.5}", 1.0 / (1.0 + 3f64.exp()));
    println!("acceptance     {:.3}", trace.acceptance_rate());
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, trace.to_csv(&cfg)).unwrap();
        println!("trace written to {path}");
    }
}
