//! Sweep of AltK4CyclesB[2] and FourCyclesNodePowerB[0.2] on 30x20 graphs
//! with Edges = -3. The alternating term jumps from near-empty to
//! near-complete graphs; the node-power term changes smoothly.
//!
//! Shorter chains than the `fig4` preset so it runs in about a minute;
//! `cargo run --release --example parameter_sweep -- full` runs the preset.

use bipartite_ergm::experiments::{largest_jump_fraction, preset_config, run_sweep, Config, SweepSpec};

fn main() {
    let mut cfg = preset_config("fig4").unwrap();
    if std::env::args().nth(1).as_deref() != Some("full") {
        cfg = cfg.merged(
            &Config::parse(
                "sweep_terms = AltK4CyclesB[2], FourCyclesNodePowerB[0.2]\n\
                 burn_in = 50000\ninterval = 2000\nsamples = 50\ntheta_step = 1\n",
            )
            .unwrap(),
        );
    }
    let spec = SweepSpec::from_config(&cfg).unwrap();
    let rows = run_sweep(&spec).unwrap();
    for term in &spec.swept {
        let series: Vec<_> = rows.iter().filter(|r| r.term == *term).collect();
        println!("{term}");
        for r in &series {
            println!("  theta {:>6}  edges {:>7.1}  statistic {:>10.2}", r.theta, r.edges.0, r.stat.0);
        }
        let stats: Vec<f64> = series.iter().map(|r| r.stat.0).collect();
        println!("  largest jump: {:.0}% of range\n", 100.0 * largest_jump_fraction(&stats));
    }
}
