//! Negative, zero and positive coefficients for the two per-mode node-power
//! terms on 100x50 graphs, with how many nodes of each mode sit on a
//! four-cycle.
//!
//! Uses the `interpret` preset with 5 networks per cell; pass a number to
//! change that.

use bipartite_ergm::experiments::{preset_config, run_interpret, InterpretSpec};

fn main() {
    let mut cfg = preset_config("interpret").unwrap();
    let networks = std::env::args().nth(1).unwrap_or_else(|| "5".into());
    cfg.set("samples", networks).unwrap();
    let spec = InterpretSpec::from_config(&cfg).unwrap();
    println!(
        "{:<10} {:>8} {:>10} {:>10} {:>10}",
        "cell", "edges", "C4", "unique A", "unique B"
    );
    for c in run_interpret(&spec).unwrap() {
        println!(
            "{:<10} {:>8.1} {:>10.1} {:>10.1} {:>10.1}",
            c.label, c.edges.0, c.four_cycles.0, c.unique_a.0, c.unique_b.0
        );
    }
}
