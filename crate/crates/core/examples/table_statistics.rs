//! Statistics of the small reference graphs: two-path, four-cycle,
//! K(2,3), ten-cycle, nine-star and four-fan-3.

use bipartite_ergm::fixtures;
use bipartite_ergm::statistics::{stat_value, Term};

fn main() {
    let graphs = [
        ("two-path", fixtures::two_path()),
        ("four-cycle", fixtures::four_cycle()),
        ("four-cycles-3", fixtures::four_cycles_3()),
        ("ten-cycle", fixtures::ten_cycle()),
        ("nine-star", fixtures::nine_star()),
        ("four-fan-3", fixtures::four_fan(3)),
    ];
    let terms = [
        Term::Edges,
        Term::TwoPathsA,
        Term::TwoPathsB,
        Term::FourCycles,
        Term::AltKCyclesA(2.0),
        Term::AltKCyclesB(2.0),
        Term::AltK4CyclesA(2.0),
        Term::AltK4CyclesB(2.0),
        Term::FourCyclesNodePowerA(0.5),
        Term::FourCyclesNodePowerB(0.5),
    ];
    print!("{:<14}", "graph");
    for t in &terms {
        print!(" {:>26}", t.to_string());
    }
    println!();
    for (name, g) in &graphs {
        print!("{name:<14}");
        for t in &terms {
            print!(" {:>26.5}", stat_value(g, t).unwrap());
        }
        println!();
    }
}
