//! Benchmark problems: influence maximization under Independent Cascade,
//! maximum coverage, and arbitrary set functions for tests and oracles.

mod cost;
mod coverage;
mod graph;
mod ic;

pub use cost::{build_im_costs, build_mc_costs, LinearCost};
pub use coverage::CoverageInstance;
pub use graph::{load_edge_list, Graph};
pub use ic::{IcModel, DEFAULT_SIMULATIONS};

use crate::error::Result;
use crate::oracle;
use crate::rng::RngStream;
use crate::subset::Subset;

/// A monotone objective `f` paired with a modular cost `ĉ` over `n` items.
///
/// `value` is one objective evaluation; stochastic objectives draw from `rng`.
pub trait Problem: Sync {
    fn size(&self) -> usize;

    fn costs(&self) -> &LinearCost;

    fn cost(&self, subset: &Subset) -> f64 {
        self.costs().total(subset)
    }

    fn value(&self, subset: &Subset, rng: &mut RngStream) -> f64;

    fn is_deterministic(&self) -> bool;

    /// Noise-free objective value, for exhaustive oracles on tiny instances.
    fn exact_value(&self, subset: &Subset) -> Result<f64>;
}

#[derive(Debug, Clone)]
pub struct CoverageProblem {
    instance: CoverageInstance,
    costs: LinearCost,
}

impl CoverageProblem {
    pub fn new(instance: CoverageInstance, costs: LinearCost) -> Self {
        assert_eq!(instance.n_sets(), costs.len(), "one cost per set");
        CoverageProblem { instance, costs }
    }

    pub fn instance(&self) -> &CoverageInstance {
        &self.instance
    }
}

impl Problem for CoverageProblem {
    fn size(&self) -> usize {
        self.instance.n_sets()
    }

    fn costs(&self) -> &LinearCost {
        &self.costs
    }

    fn value(&self, subset: &Subset, _rng: &mut RngStream) -> f64 {
        self.instance.value(subset) as f64
    }

    fn is_deterministic(&self) -> bool {
        true
    }

    fn exact_value(&self, subset: &Subset) -> Result<f64> {
        Ok(self.instance.value(subset) as f64)
    }
}

#[derive(Debug, Clone)]
pub struct InfluenceProblem {
    model: IcModel,
    costs: LinearCost,
}

impl InfluenceProblem {
    pub fn new(model: IcModel, costs: LinearCost) -> Self {
        assert_eq!(
            model.graph().n_vertices(),
            costs.len(),
            "one cost per vertex"
        );
        InfluenceProblem { model, costs }
    }

    pub fn model(&self) -> &IcModel {
        &self.model
    }
}

impl Problem for InfluenceProblem {
    fn size(&self) -> usize {
        self.model.graph().n_vertices()
    }

    fn costs(&self) -> &LinearCost {
        &self.costs
    }

    fn value(&self, subset: &Subset, rng: &mut RngStream) -> f64 {
        self.model.estimate(subset, rng)
    }

    fn is_deterministic(&self) -> bool {
        false
    }

    fn exact_value(&self, subset: &Subset) -> Result<f64> {
        oracle::exact_ic_expectation(&self.model, subset)
    }
}

type SetFn = dyn Fn(&Subset) -> f64 + Send + Sync;

/// A deterministic problem defined by a closure.
pub struct SetFunctionProblem {
    costs: LinearCost,
    f: Box<SetFn>,
}

impl SetFunctionProblem {
    pub fn new<F>(costs: LinearCost, f: F) -> Self
    where
        F: Fn(&Subset) -> f64 + Send + Sync + 'static,
    {
        SetFunctionProblem {
            costs,
            f: Box::new(f),
        }
    }
}

impl std::fmt::Debug for SetFunctionProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SetFunctionProblem")
            .field("costs", &self.costs)
            .finish_non_exhaustive()
    }
}

impl Problem for SetFunctionProblem {
    fn size(&self) -> usize {
        self.costs.len()
    }

    fn costs(&self) -> &LinearCost {
        &self.costs
    }

    fn value(&self, subset: &Subset, _rng: &mut RngStream) -> f64 {
        (self.f)(subset)
    }

    fn is_deterministic(&self) -> bool {
        true
    }

    fn exact_value(&self, subset: &Subset) -> Result<f64> {
        Ok((self.f)(subset))
    }
}
