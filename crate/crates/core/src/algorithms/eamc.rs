//! EAMC: a single-objective EA keeping, per subset size, the best solution
//! under the surrogate `g` and the best under `f`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::rng::RngStream;
use crate::solution::EvalCounter;
use crate::subset::Subset;
use crate::variation::bitwise_mutate;

/// `g(X) = f(X) / (1 - exp(-α_f ĉ(X) / B))`, and `g = f` for the empty set
/// (the only zero-cost subset).
pub fn surrogate_g(f_value: f64, cost: f64, budget: f64, alpha_f: f64) -> f64 {
    if cost == 0.0 {
        return f_value;
    }
    f_value / (1.0 - (-alpha_f * cost / budget).exp())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EamcEntry {
    pub bits: Subset,
    pub f_value: f64,
    pub cost: f64,
    pub g: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bin {
    pub best_g: EamcEntry,
    pub best_f: EamcEntry,
}

impl Bin {
    fn single(e: EamcEntry) -> Self {
        Bin {
            best_g: e.clone(),
            best_f: e,
        }
    }

    /// Distinct stored solutions (one when both champions coincide).
    fn stored(&self) -> impl Iterator<Item = &EamcEntry> {
        let second = (self.best_f.bits != self.best_g.bits).then_some(&self.best_f);
        std::iter::once(&self.best_g).chain(second)
    }
}

#[derive(Debug, Clone)]
pub struct EamcState {
    /// `bins[i]` holds the champions of size `i`.
    pub bins: Vec<Option<Bin>>,
    pub counter: EvalCounter,
    pub alpha_f: f64,
    pub current_budget: f64,
}

impl EamcState {
    pub fn new(n: usize, alpha_f: f64) -> Result<Self> {
        if !(alpha_f > 0.0 && alpha_f <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha_f {alpha_f} outside (0, 1]"
            )));
        }
        Ok(EamcState {
            bins: vec![None; n + 1],
            counter: EvalCounter::new(0),
            alpha_f,
            current_budget: 0.0,
        })
    }

    pub fn size(&self) -> usize {
        self.bins.len() - 1
    }

    pub fn stored(&self) -> impl Iterator<Item = &EamcEntry> {
        self.bins.iter().flatten().flat_map(Bin::stored)
    }

    pub fn population(&self) -> usize {
        self.stored().count()
    }

    /// Stored solution with the largest `f` among those with cost `<= budget`.
    pub fn best_feasible(&self, budget: f64) -> Option<&EamcEntry> {
        let mut best: Option<&EamcEntry> = None;
        for e in self.stored().filter(|e| e.cost <= budget) {
            if best.is_none_or(|b| e.f_value > b.f_value) {
                best = Some(e);
            }
        }
        best
    }

    fn entry(&self, bits: Subset, f_value: f64, cost: f64) -> EamcEntry {
        let g = surrogate_g(f_value, cost, self.current_budget, self.alpha_f);
        EamcEntry {
            bits,
            f_value,
            cost,
            g,
        }
    }

    /// Offers a feasible, evaluated entry to its size bin. Returns whether
    /// either champion changed.
    pub fn offer(&mut self, e: EamcEntry) -> bool {
        let size = e.bits.count();
        match &mut self.bins[size] {
            slot @ None => {
                *slot = Some(Bin::single(e));
                true
            }
            Some(bin) => {
                let mut changed = false;
                if e.g > bin.best_g.g {
                    bin.best_g = e.clone();
                    changed = true;
                }
                if e.f_value > bin.best_f.f_value {
                    bin.best_f = e;
                    changed = true;
                }
                changed
            }
        }
    }

    fn ensure_seeded(&mut self, problem: &dyn Problem, rng: &mut RngStream) -> Result<()> {
        if self.bins.iter().any(Option::is_some) {
            return Ok(());
        }
        let empty = Subset::empty(self.size());
        let f = if self.counter.is_exhausted() {
            0.0
        } else {
            self.counter.consume()?;
            problem.value(&empty, rng)
        };
        let e = self.entry(empty, f, 0.0);
        self.offer(e);
        Ok(())
    }
}

/// One EAMC iteration; consumes one evaluation.
pub fn eamc_step(state: &mut EamcState, problem: &dyn Problem, rng: &mut RngStream) -> Result<()> {
    let parents: Vec<&EamcEntry> = state.stored().collect();
    if parents.is_empty() {
        return Err(Error::EmptyArchive);
    }
    let parent = parents[rng.random_range(0..parents.len())].bits.clone();
    let child = bitwise_mutate(&parent, rng);
    state.counter.consume()?;
    let cost = problem.cost(&child);
    let f = problem.value(&child, rng);
    if cost > state.current_budget {
        return Ok(());
    }
    let e = state.entry(child, f, cost);
    state.offer(e);
    Ok(())
}

/// Recomputes `g` of every stored solution at `new_budget` from the cached
/// `(f, ĉ)` values and re-ranks each bin's `g` champion. No evaluations.
pub fn eamc_rebudget(state: &mut EamcState, new_budget: f64) {
    state.current_budget = new_budget;
    let alpha = state.alpha_f;
    for bin in state.bins.iter_mut().flatten() {
        bin.best_g.g = surrogate_g(bin.best_g.f_value, bin.best_g.cost, new_budget, alpha);
        bin.best_f.g = surrogate_g(bin.best_f.f_value, bin.best_f.cost, new_budget, alpha);
        if bin.best_f.g > bin.best_g.g {
            bin.best_g = bin.best_f.clone();
        }
    }
}

#[derive(Debug, Clone)]
pub struct Eamc {
    state: EamcState,
    phases: usize,
}

impl Eamc {
    pub fn new(n: usize, alpha_f: f64) -> Result<Self> {
        Ok(Eamc {
            state: EamcState::new(n, alpha_f)?,
            phases: 0,
        })
    }

    pub fn state(&self) -> &EamcState {
        &self.state
    }
}

impl super::DynamicAlgorithm for Eamc {
    fn run_phase(
        &mut self,
        problem: &dyn Problem,
        budget: f64,
        eval_limit: u64,
        rng: &mut RngStream,
    ) -> Result<super::PhaseReport> {
        let before = self.state.counter.count();
        if self.phases == 0 {
            self.state.current_budget = budget;
        } else {
            eamc_rebudget(&mut self.state, budget);
        }
        self.state.counter.extend(eval_limit);
        self.state.ensure_seeded(problem, rng)?;
        while !self.state.counter.is_exhausted() {
            eamc_step(&mut self.state, problem, rng)?;
        }
        self.phases += 1;
        Ok(super::PhaseReport {
            evals: self.state.counter.count() - before,
            best: self
                .state
                .best_feasible(budget)
                .map(|e| (e.f_value, e.cost)),
            population: self.state.population(),
            min_selection_prob: None,
        })
    }
}
