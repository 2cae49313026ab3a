//! Independent Cascade propagation and its Monte Carlo estimator.
//!
//! Each simulation gets its own stream derived from `(evaluation seed,
//! simulation index)`, so the sequential and the rayon-backed estimators
//! produce bit-identical results.

use rand::{Rng, RngCore};

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::{derive_seed, RngStream};
use crate::subset::Subset;

pub const DEFAULT_SIMULATIONS: usize = 500;

#[derive(Debug, Clone, PartialEq)]
pub struct IcModel {
    graph: Graph,
    edge_probability: f64,
    n_simulations: usize,
    // ln(1 - p), used for geometric skipping over failed arc flips
    log_fail: f64,
}

impl IcModel {
    pub fn new(graph: Graph, edge_probability: f64, n_simulations: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&edge_probability) {
            return Err(Error::InvalidParameter(format!(
                "edge probability {edge_probability} outside [0, 1]"
            )));
        }
        if n_simulations == 0 {
            return Err(Error::InvalidParameter(
                "n_simulations must be positive".into(),
            ));
        }
        Ok(IcModel {
            graph,
            edge_probability,
            n_simulations,
            log_fail: (1.0 - edge_probability).ln(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edge_probability(&self) -> f64 {
        self.edge_probability
    }

    pub fn n_simulations(&self) -> usize {
        self.n_simulations
    }

    /// One cascade from `seeds`; returns every activated vertex, seeds included.
    pub fn single_run(&self, seeds: &Subset, rng: &mut RngStream) -> Subset {
        let mut scratch = Cascade::new(self.graph.n_vertices());
        scratch.spread(self, seeds, rng);
        Subset::from_items(
            self.graph.n_vertices(),
            scratch.touched.iter().map(|&v| v as usize),
        )
    }

    /// Mean cascade size over `n_simulations` runs. Draws one value from
    /// `rng` to seed the per-simulation streams.
    pub fn estimate(&self, seeds: &Subset, rng: &mut RngStream) -> f64 {
        let eval_seed = rng.next_u64();
        #[cfg(feature = "parallel")]
        let total = self.total_parallel(seeds, eval_seed);
        #[cfg(not(feature = "parallel"))]
        let total = self.total_sequential(seeds, eval_seed);
        total as f64 / self.n_simulations as f64
    }

    /// Sequential estimator; always available.
    pub fn estimate_sequential(&self, seeds: &Subset, rng: &mut RngStream) -> f64 {
        let eval_seed = rng.next_u64();
        self.total_sequential(seeds, eval_seed) as f64 / self.n_simulations as f64
    }

    #[cfg(feature = "parallel")]
    pub fn estimate_parallel(&self, seeds: &Subset, rng: &mut RngStream) -> f64 {
        let eval_seed = rng.next_u64();
        self.total_parallel(seeds, eval_seed) as f64 / self.n_simulations as f64
    }

    fn total_sequential(&self, seeds: &Subset, eval_seed: u64) -> u64 {
        if seeds.is_empty() {
            return 0;
        }
        let mut scratch = Cascade::new(self.graph.n_vertices());
        (0..self.n_simulations)
            .map(|k| {
                let mut rng = RngStream::new(derive_seed(eval_seed, k as u64));
                scratch.spread(self, seeds, &mut rng) as u64
            })
            .sum()
    }

    #[cfg(feature = "parallel")]
    fn total_parallel(&self, seeds: &Subset, eval_seed: u64) -> u64 {
        use rayon::prelude::*;
        if seeds.is_empty() {
            return 0;
        }
        (0..self.n_simulations)
            .into_par_iter()
            .map_init(
                || Cascade::new(self.graph.n_vertices()),
                |scratch, k| {
                    let mut rng = RngStream::new(derive_seed(eval_seed, k as u64));
                    scratch.spread(self, seeds, &mut rng) as u64
                },
            )
            .sum()
    }
}

/// Reusable buffers for one cascade.
struct Cascade {
    active: Vec<bool>,
    touched: Vec<u32>,
    frontier: Vec<u32>,
    next: Vec<u32>,
}

impl Cascade {
    fn new(n: usize) -> Self {
        Cascade {
            active: vec![false; n],
            touched: Vec::new(),
            frontier: Vec::new(),
            next: Vec::new(),
        }
    }

    /// Runs one cascade and returns the number of activated vertices.
    /// `touched` holds the activated set until the next call.
    fn spread(&mut self, model: &IcModel, seeds: &Subset, rng: &mut RngStream) -> usize {
        for &v in &self.touched {
            self.active[v as usize] = false;
        }
        self.touched.clear();
        self.frontier.clear();
        for s in seeds.items() {
            self.active[s] = true;
            self.touched.push(s as u32);
            self.frontier.push(s as u32);
        }

        let p = model.edge_probability;
        while !self.frontier.is_empty() {
            self.next.clear();
            for &u in &self.frontier {
                let nbrs = model.graph.out_neighbors(u as usize);
                if p >= 1.0 {
                    for &v in nbrs {
                        if !self.active[v as usize] {
                            self.active[v as usize] = true;
                            self.touched.push(v);
                            self.next.push(v);
                        }
                    }
                } else if p > 0.0 {
                    // Gaps between successful flips are geometric, which is
                    // equivalent to one Bernoulli(p) flip per arc.
                    let mut idx = 0usize;
                    loop {
                        let u01 = 1.0 - rng.random::<f64>();
                        let skip = (u01.ln() / model.log_fail).floor();
                        if skip >= (nbrs.len() - idx) as f64 {
                            break;
                        }
                        idx += skip as usize;
                        let v = nbrs[idx];
                        if !self.active[v as usize] {
                            self.active[v as usize] = true;
                            self.touched.push(v);
                            self.next.push(v);
                        }
                        idx += 1;
                    }
                }
            }
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
        self.touched.len()
    }
}
