//! Change statistics of adding one edge, checked against recomputing the
//! statistics before and after the toggle.

use bipartite_ergm::fixtures;
use bipartite_ergm::statistics::{model_change, model_stats, Model, Term};

fn main() {
    let model = Model::zeros(vec![
        Term::Edges,
        Term::AltKCyclesB(2.0),
        Term::AltK4CyclesB(2.0),
        Term::FourCycles,
        Term::FourCyclesNodePowerA(0.5),
        Term::FourCyclesNodePowerB(0.5),
    ])
    .unwrap();

    // K(2,3) with one edge missing, and the edge that restores it
    let mut g = fixtures::four_cycles_3();
    g.toggle_edge(1, 2).unwrap();
    let delta = model_change(&g, &model, 1, 2).unwrap();
    let before = model_stats(&g, &model);
    g.toggle_edge(1, 2).unwrap();
    let after = model_stats(&g, &model);

    println!("{:<26} {:>12} {:>12}", "term", "change", "difference");
    for (i, name) in model.term_names().iter().enumerate() {
        println!("{name:<26} {:>12.6} {:>12.6}", delta[i], after[i] - before[i]);
    }
}
