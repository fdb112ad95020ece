//! Exponential random graph models for two-mode (bipartite) networks.
//!
//! The crate covers the full workflow around four-cycle closure statistics:
//!
//! * [`graph`]: a bipartite graph whose edge toggles maintain the two-path
//!   multiplicities and per-node four-cycle counts incrementally;
//! * [`statistics`]: the term catalogue, full statistics and exact change
//!   statistics, including the node-power four-cycle terms;
//! * [`sampler`]: Metropolis-Hastings simulation with a uniform-dyad kernel
//!   and a tie/no-tie kernel;
//! * [`estimation`]: Equilibrium Expectation and stochastic approximation
//!   estimators with standard errors and convergence t-ratios;
//! * [`gof`]: cycle census and goodness-of-fit reports;
//! * [`experiments`]: config files, presets and the commands behind the
//!   `bpergm` binary.
//!
//! ```
//! use bipartite_ergm::{fixtures, statistics::{stat_value, Term}};
//!
//! let fan = fixtures::four_fan(3);
//! let z = stat_value(&fan, &Term::FourCyclesNodePowerA(0.5)).unwrap();
//! assert!((z - (3f64.sqrt() + 3.0)).abs() < 1e-12);
//! ```

pub mod error;
pub mod estimation;
pub mod experiments;
pub mod fixtures;
pub mod gof;
pub mod graph;
pub mod io;
pub mod sampler;
pub mod statistics;
pub mod summary;

pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Mode, NodeRef};
pub use statistics::{Model, Term};
