//! Pareto optimization over `(f1, f2)`: BPODC, its cold-start ablation, and POMC.

use super::selection::{biased_probabilities, biased_select, SelectionKind, SelectionPolicy};
use crate::archive::ParetoArchive;
use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::rng::RngStream;
use crate::solution::{evaluate, EvalCounter, Solution};
use crate::subset::Subset;
use crate::variation::bitwise_mutate;

#[derive(Debug, Clone)]
pub struct ParetoState {
    pub archive: ParetoArchive,
    pub counter: EvalCounter,
    pub warm_up_active: bool,
    pub current_budget: f64,
    n: usize,
    // smallest selection probability handed to a chosen parent this phase
    min_selection_prob: Option<f64>,
}

/// What one iteration did; two runs are step-for-step identical iff their
/// records match.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub parent_index: usize,
    pub child: Subset,
    pub accepted: bool,
}

impl ParetoState {
    pub fn new(n: usize) -> Self {
        ParetoState {
            archive: ParetoArchive::new(),
            counter: EvalCounter::new(0),
            warm_up_active: false,
            current_budget: 0.0,
            n,
            min_selection_prob: None,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn min_selection_prob(&self) -> Option<f64> {
        self.min_selection_prob
    }

    fn note_prob(&mut self, p: f64) {
        self.min_selection_prob = Some(self.min_selection_prob.map_or(p, |m| m.min(p)));
    }
}

/// One iteration: select a parent, mutate it, evaluate the child at the
/// current budget and offer it to the archive.
pub fn pareto_step(
    state: &mut ParetoState,
    policy: &SelectionPolicy,
    problem: &dyn Problem,
    rng: &mut RngStream,
) -> Result<StepRecord> {
    if state.counter.is_exhausted() {
        return Err(Error::BudgetExhausted {
            limit: state.counter.limit(),
        });
    }
    let uniform = state.warm_up_active || policy.kind == SelectionKind::Uniform;
    let parent_index = if uniform {
        let i = state.archive.uniform_index(rng)?;
        state.note_prob(1.0 / state.archive.len() as f64);
        i
    } else {
        let i = biased_select(&state.archive, state.current_budget, policy.epsilon, rng)?;
        let probs = biased_probabilities(&state.archive, state.current_budget, policy.epsilon);
        state.note_prob(probs[i]);
        i
    };
    let child_bits = bitwise_mutate(state.archive.members()[parent_index].bits(), rng);
    let child = evaluate(
        problem,
        child_bits.clone(),
        state.current_budget,
        &mut state.counter,
        rng,
    )?;
    let accepted = state.archive.insert(child);
    Ok(StepRecord {
        parent_index,
        child: child_bits,
        accepted,
    })
}

/// Runs one budget phase with `eval_limit` evaluations.
///
/// The first phase seeds the archive with `0^n` (one evaluation when the
/// limit allows it). The first `warm_up_evals` evaluations of the phase use
/// uniform selection; the archive is carried over unchanged between phases.
#[allow(clippy::too_many_arguments)]
pub fn run_bpodc_phase(
    state: &mut ParetoState,
    problem: &dyn Problem,
    budget: f64,
    eval_limit: u64,
    warm_up_evals: u64,
    policy: &SelectionPolicy,
    rng: &mut RngStream,
    mut trace: Option<&mut Vec<StepRecord>>,
) -> Result<()> {
    state.current_budget = budget;
    state.counter.extend(eval_limit);
    state.min_selection_prob = None;
    let start = state.counter.count();

    if state.archive.is_empty() {
        let empty = if state.counter.is_exhausted() {
            Solution::empty(state.n, budget)
        } else {
            evaluate(
                problem,
                Subset::empty(state.n),
                budget,
                &mut state.counter,
                rng,
            )?
        };
        state.archive.insert(empty);
    }

    while !state.counter.is_exhausted() {
        state.warm_up_active = state.counter.count() - start < warm_up_evals;
        let rec = pareto_step(state, policy, problem, rng)?;
        if let Some(t) = trace.as_deref_mut() {
            t.push(rec);
        }
    }
    state.warm_up_active = false;
    Ok(())
}

/// Which member of the Pareto family to run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParetoVariant {
    /// Biased selection, uniform warm-up over a fraction of the first phase.
    Bpodc { warm_up_fraction: f64 },
    /// Biased selection from the first iteration.
    BpodcCold,
    /// Uniform selection throughout.
    Pomc,
}

#[derive(Debug, Clone)]
pub struct ParetoOptimizer {
    variant: ParetoVariant,
    policy: SelectionPolicy,
    state: ParetoState,
    phases: usize,
}

impl ParetoOptimizer {
    pub fn new(n: usize, variant: ParetoVariant, epsilon: f64) -> Result<Self> {
        let policy = match variant {
            ParetoVariant::Pomc => SelectionPolicy::uniform(),
            _ => SelectionPolicy::biased(epsilon)?,
        };
        if let ParetoVariant::Bpodc { warm_up_fraction } = variant {
            if !(0.0..=1.0).contains(&warm_up_fraction) {
                return Err(Error::InvalidParameter(format!(
                    "warm-up fraction {warm_up_fraction} outside [0, 1]"
                )));
            }
        }
        Ok(ParetoOptimizer {
            variant,
            policy,
            state: ParetoState::new(n),
            phases: 0,
        })
    }

    /// Same loop with an explicit policy, e.g. BPODC with biased selection disabled.
    pub fn with_policy(n: usize, variant: ParetoVariant, policy: SelectionPolicy) -> Self {
        ParetoOptimizer {
            variant,
            policy,
            state: ParetoState::new(n),
            phases: 0,
        }
    }

    pub fn state(&self) -> &ParetoState {
        &self.state
    }

    pub fn variant(&self) -> ParetoVariant {
        self.variant
    }

    pub fn run_phase_traced(
        &mut self,
        problem: &dyn Problem,
        budget: f64,
        eval_limit: u64,
        rng: &mut RngStream,
        trace: Option<&mut Vec<StepRecord>>,
    ) -> Result<()> {
        let warm_up_evals = match (self.variant, self.phases) {
            (ParetoVariant::Bpodc { warm_up_fraction }, 0) => {
                (warm_up_fraction * eval_limit as f64).ceil() as u64
            }
            _ => 0,
        };
        run_bpodc_phase(
            &mut self.state,
            problem,
            budget,
            eval_limit,
            warm_up_evals,
            &self.policy,
            rng,
            trace,
        )?;
        self.phases += 1;
        Ok(())
    }
}

impl super::DynamicAlgorithm for ParetoOptimizer {
    fn run_phase(
        &mut self,
        problem: &dyn Problem,
        budget: f64,
        eval_limit: u64,
        rng: &mut RngStream,
    ) -> Result<super::PhaseReport> {
        let before = self.state.counter.count();
        self.run_phase_traced(problem, budget, eval_limit, rng, None)?;
        let best = self
            .state
            .archive
            .best_feasible(budget)
            .map(|s| (s.f_value(), s.cost()));
        Ok(super::PhaseReport {
            evals: self.state.counter.count() - before,
            best,
            population: self.state.archive.len(),
            min_selection_prob: self.state.min_selection_prob(),
        })
    }
}
