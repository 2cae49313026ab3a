use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;

use crate::archive::ParetoArchive;
use crate::error::{Error, Result};
use crate::rng::RngStream;

pub const DEFAULT_EPSILON: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionKind {
    Uniform,
    Biased,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionPolicy {
    pub kind: SelectionKind,
    pub epsilon: f64,
}

impl SelectionPolicy {
    pub fn uniform() -> Self {
        SelectionPolicy {
            kind: SelectionKind::Uniform,
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn biased(epsilon: f64) -> Result<Self> {
        if epsilon.is_nan() || epsilon <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        Ok(SelectionPolicy {
            kind: SelectionKind::Biased,
            epsilon,
        })
    }
}

impl Default for SelectionPolicy {
    fn default() -> Self {
        SelectionPolicy {
            kind: SelectionKind::Biased,
            epsilon: DEFAULT_EPSILON,
        }
    }
}

/// Unnormalized weights `1 / (|ĉ(x) - B| + ε)`, in archive order.
pub fn biased_weights(archive: &ParetoArchive, budget: f64, epsilon: f64) -> Vec<f64> {
    archive
        .members()
        .iter()
        .map(|m| 1.0 / ((m.cost() - budget).abs() + epsilon))
        .collect()
}

/// Normalized selection probabilities of the biased rule.
pub fn biased_probabilities(archive: &ParetoArchive, budget: f64, epsilon: f64) -> Vec<f64> {
    let w = biased_weights(archive, budget, epsilon);
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

/// Samples an archive index with probability proportional to its biased weight.
pub fn biased_select(
    archive: &ParetoArchive,
    budget: f64,
    epsilon: f64,
    rng: &mut RngStream,
) -> Result<usize> {
    if archive.is_empty() {
        return Err(Error::EmptyArchive);
    }
    let weights = biased_weights(archive, budget, epsilon);
    let dist = WeightedIndex::new(&weights)
        .map_err(|e| Error::InvalidParameter(format!("selection weights: {e}")))?;
    Ok(dist.sample(rng))
}
