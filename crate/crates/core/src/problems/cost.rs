use rand::Rng;
use rand_distr::Normal;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::subset::Subset;

/// Modular cost `ĉ(X) = Σ_{v∈X} c_v` with strictly positive item costs.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearCost {
    item_costs: Vec<f64>,
}

impl LinearCost {
    pub fn new(item_costs: Vec<f64>) -> Result<Self> {
        if let Some(bad) = item_costs.iter().find(|c| !(c.is_finite() && **c > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "item costs must be positive and finite, got {bad}"
            )));
        }
        Ok(LinearCost { item_costs })
    }

    pub fn unit(n: usize) -> Self {
        LinearCost {
            item_costs: vec![1.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.item_costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.item_costs.is_empty()
    }

    pub fn item(&self, v: usize) -> f64 {
        self.item_costs[v]
    }

    pub fn item_costs(&self) -> &[f64] {
        &self.item_costs
    }

    pub fn total(&self, subset: &Subset) -> f64 {
        subset.items().map(|v| self.item_costs[v]).sum()
    }

    /// Smallest item cost, i.e. the minimum marginal cost of a modular cost.
    pub fn min_item_cost(&self) -> f64 {
        self.item_costs
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Influence-maximization costs `c_v = 1 + (1 + |ξ_v|)·d(v)` with
/// `ξ_v ~ N(0, 0.5²)` drawn once per vertex, in vertex order.
pub fn build_im_costs(graph: &Graph, rng: &mut RngStream) -> LinearCost {
    let normal = Normal::new(0.0, 0.5).expect("valid normal parameters");
    let item_costs = (0..graph.n_vertices())
        .map(|v| {
            let xi: f64 = rng.sample(normal);
            im_cost(graph.out_degree(v), xi)
        })
        .collect();
    LinearCost { item_costs }
}

pub(crate) fn im_cost(out_degree: usize, xi: f64) -> f64 {
    1.0 + (1.0 + xi.abs()) * out_degree as f64
}

/// Maximum-coverage costs `c_v = 1 + max(d(v) - q, 0)`.
pub fn build_mc_costs(graph: &Graph, q: usize) -> LinearCost {
    let item_costs = (0..graph.n_vertices())
        .map(|v| 1.0 + graph.out_degree(v).saturating_sub(q) as f64)
        .collect();
    LinearCost { item_costs }
}
