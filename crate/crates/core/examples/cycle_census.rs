//! Counts of simple cycles by length, for a few small graphs and for
//! Southern Women.

use bipartite_ergm::fixtures;
use bipartite_ergm::gof::{cycle_census, unique_nodes_in_four_cycles};

fn main() {
    let graphs = [
        ("ten-cycle", fixtures::ten_cycle()),
        ("K(3,3)", fixtures::complete(3, 3)),
        ("four-fan-3", fixtures::four_fan(3)),
        ("southern women", fixtures::southern_women()),
    ];
    for (name, g) in &graphs {
        let census = cycle_census(g, 10).unwrap();
        let (ua, ub) = unique_nodes_in_four_cycles(g);
        println!("{name}: {census:?}, nodes on a four-cycle: {ua} A, {ub} B");
    }
}
