//! Reading and writing the edge-list format: a header line `N_A N_B`, then
//! one zero-based `a b` pair per line. `#` lines are comments.

use bipartite_ergm::{fixtures, io};

fn main() {
    let text = "# a four-cycle plus a pendant edge\n3 2\n0 0\n0 1\n1 0\n1 1\n2 1\n";
    let g = io::load_graph_str(text).unwrap();
    println!("{} x {} with {} edges, {} four-cycle(s)", g.n_a(), g.n_b(), g.edge_count(), g.total_c4());
    print!("{}", io::graph_to_string(&g));

    match io::load_graph_str("2 2\n0 0\n0 0\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("duplicate edge: {e}"),
    }
    match io::load_graph_str("18 14\n18 0\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("out of range: {e}"),
    }

    let sw = fixtures::southern_women();
    if let Some(path) = std::env::args().nth(1) {
        io::save_graph(&sw, std::fs::File::create(&path).unwrap()).unwrap();
        println!("southern women written to {path}");
    }
}
