//! Biased Pareto optimization for monotone subset selection under dynamic
//! cost constraints, together with the POMC, EAMC, GGA and AGGA baselines,
//! influence-maximization and maximum-coverage benchmarks, and exhaustive
//! oracles for small instances.
//!
//! The `parallel` feature (on by default) runs Monte Carlo simulations,
//! exhaustive enumeration and batches of runs on rayon. Results are
//! bit-identical with the feature off.

pub mod algorithms;
pub mod archive;
pub mod dynamics;
pub mod error;
pub mod oracle;
pub mod problems;
pub mod rng;
pub mod solution;
pub mod subset;
pub mod variation;

pub use archive::ParetoArchive;
pub use error::{Error, Result};
pub use rng::RngStream;
pub use solution::{dominates, evaluate, EvalCounter, Fitness, Relation, Solution};
pub use subset::Subset;
pub use variation::bitwise_mutate;
