//! Subset-selection algorithms for dynamic budgets.
//!
//! Every algorithm implements [`DynamicAlgorithm`]: it is driven one budget
//! phase at a time and carries whatever state it keeps across phases.

mod eamc;
mod goodness;
mod greedy;
mod pareto;
mod selection;

use std::fmt;
use std::str::FromStr;

pub use eamc::{eamc_rebudget, eamc_step, surrogate_g, Bin, Eamc, EamcEntry, EamcState};
pub use goodness::{goodness_h, DEFAULT_GOODNESS_C};
pub use greedy::{agga_adapt, gga, Agga, GgaRestart, GreedyState};
pub use pareto::{
    pareto_step, run_bpodc_phase, ParetoOptimizer, ParetoState, ParetoVariant, StepRecord,
};
pub use selection::{
    biased_probabilities, biased_select, biased_weights, SelectionKind, SelectionPolicy,
    DEFAULT_EPSILON,
};

use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::rng::RngStream;

/// Outcome of one budget phase.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseReport {
    pub evals: u64,
    /// `(f, ĉ)` of the best feasible solution held after the phase.
    pub best: Option<(f64, f64)>,
    pub population: usize,
    /// Smallest probability with which a parent was chosen (Pareto family only).
    pub min_selection_prob: Option<f64>,
}

pub trait DynamicAlgorithm {
    /// Runs one phase at `budget`. Evolutionary algorithms spend exactly
    /// `eval_limit` evaluations; greedy algorithms ignore the limit and
    /// report what they used.
    fn run_phase(
        &mut self,
        problem: &dyn Problem,
        budget: f64,
        eval_limit: u64,
        rng: &mut RngStream,
    ) -> Result<PhaseReport>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmKind {
    Bpodc,
    BpodcCold,
    Pomc,
    Eamc,
    Gga,
    Agga,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 6] = [
        AlgorithmKind::Bpodc,
        AlgorithmKind::BpodcCold,
        AlgorithmKind::Pomc,
        AlgorithmKind::Eamc,
        AlgorithmKind::Gga,
        AlgorithmKind::Agga,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::Bpodc => "bpodc",
            AlgorithmKind::BpodcCold => "bpodc-cold",
            AlgorithmKind::Pomc => "pomc",
            AlgorithmKind::Eamc => "eamc",
            AlgorithmKind::Gga => "gga",
            AlgorithmKind::Agga => "agga",
        }
    }

    pub fn is_greedy(self) -> bool {
        matches!(self, AlgorithmKind::Gga | AlgorithmKind::Agga)
    }

    pub fn build(self, n: usize, opts: &AlgorithmOptions) -> Result<Box<dyn DynamicAlgorithm>> {
        Ok(match self {
            AlgorithmKind::Bpodc => Box::new(ParetoOptimizer::new(
                n,
                ParetoVariant::Bpodc {
                    warm_up_fraction: opts.warm_up_fraction,
                },
                opts.epsilon,
            )?),
            AlgorithmKind::BpodcCold => Box::new(ParetoOptimizer::new(
                n,
                ParetoVariant::BpodcCold,
                opts.epsilon,
            )?),
            AlgorithmKind::Pomc => {
                Box::new(ParetoOptimizer::new(n, ParetoVariant::Pomc, opts.epsilon)?)
            }
            AlgorithmKind::Eamc => Box::new(Eamc::new(n, opts.alpha_f)?),
            AlgorithmKind::Gga => Box::new(GgaRestart::new()),
            AlgorithmKind::Agga => Box::new(Agga::new()),
        })
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmOptions {
    pub epsilon: f64,
    /// Share of the first phase's evaluations that BPODC spends on uniform selection.
    pub warm_up_fraction: f64,
    pub alpha_f: f64,
}

impl Default for AlgorithmOptions {
    fn default() -> Self {
        AlgorithmOptions {
            epsilon: DEFAULT_EPSILON,
            warm_up_fraction: 1.0,
            alpha_f: 1.0,
        }
    }
}
