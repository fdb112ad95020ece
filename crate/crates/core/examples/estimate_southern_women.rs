//! Fits Edges + B1Star2 + B2Star2 to the Southern Women network by
//! stochastic approximation, then by Equilibrium Expectation.

use bipartite_ergm::estimation::{estimate, Algorithm, EstimationConfig};
use bipartite_ergm::sampler::{Kernel, SamplerConfig};
use bipartite_ergm::statistics::{Model, Term};
use bipartite_ergm::fixtures;

fn main() {
    let g = fixtures::southern_women();
    let model = Model::zeros(vec![Term::Edges, Term::B1Star2, Term::B2Star2]).unwrap();
    for algorithm in [Algorithm::StochasticApprox, Algorithm::EquilibriumExpectation] {
        let cfg = EstimationConfig {
            algorithm,
            sampler: SamplerConfig {
                kernel: Kernel::Tnt,
                burn_in: 20_000,
                interval: 1_000,
                samples: 1,
                seed: 11,
            },
            ..EstimationConfig::default()
        };
        let fit = estimate(&g, &model, &cfg).unwrap();
        println!("{algorithm}: converged = {}", fit.converged);
        for i in 0..model.len() {
            println!(
                "  {:<10} {:>8.3} ({:.3})  t = {:+.3}",
                fit.term_names[i], fit.theta_hat[i], fit.std_errors[i], fit.t_ratios[i]
            );
        }
    }
}
