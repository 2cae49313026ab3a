use super::BudgetSchedule;
use crate::algorithms::{AlgorithmKind, AlgorithmOptions};
use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::rng::RngStream;

/// `T_G = n(n+1)/2`, the evaluation count of a full greedy run.
pub fn greedy_eval_count(n: usize) -> u64 {
    (n as u64) * (n as u64 + 1) / 2
}

/// Evaluations granted to the evolutionary algorithms per phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalPolicy {
    pub t_initial: u64,
    pub t_change: u64,
}

impl EvalPolicy {
    /// Limits as fractions of `T_G` for a ground set of size `n`, rounded to
    /// the nearest integer.
    pub fn from_fractions(n: usize, initial: f64, change: f64) -> Result<Self> {
        if !(initial >= 0.0 && change >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "evaluation fractions must be nonnegative, got {initial} and {change}"
            )));
        }
        let tg = greedy_eval_count(n) as f64;
        Ok(EvalPolicy {
            t_initial: (initial * tg).round() as u64,
            t_change: (change * tg).round() as u64,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChangeRecord {
    /// 0 for the initial budget, `k` for the k-th change.
    pub change_index: usize,
    pub budget: f64,
    pub evals_consumed: u64,
    pub best_f: Option<f64>,
    pub best_cost: Option<f64>,
    pub archive_size: usize,
    pub min_selection_prob: Option<f64>,
    /// The phase used more evaluations than the evolutionary limit `t`.
    pub exceeds_t: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub algorithm: AlgorithmKind,
    pub seed: u64,
    pub problem_id: String,
    pub policy: EvalPolicy,
    pub records: Vec<ChangeRecord>,
}

/// One algorithm run over a whole schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct RunJob {
    pub algorithm: AlgorithmKind,
    pub seed: u64,
}

/// Replays `schedule` against one algorithm.
///
/// Phase 0 runs at the initial budget with `t_initial` evaluations, every
/// later phase continues from the carried state with `t_change`. Greedy
/// baselines ignore the limits; their actual counts are recorded.
pub fn run_dynamic(
    algorithm: AlgorithmKind,
    options: &AlgorithmOptions,
    problem: &dyn Problem,
    problem_id: &str,
    schedule: &BudgetSchedule,
    policy: EvalPolicy,
    seed: u64,
) -> Result<RunTrace> {
    let mut alg = algorithm.build(problem.size(), options)?;
    let mut rng = RngStream::new(seed);
    let mut records = Vec::with_capacity(schedule.n_changes() + 1);
    for (change_index, budget) in schedule.phases().enumerate() {
        let limit = if change_index == 0 {
            policy.t_initial
        } else {
            policy.t_change
        };
        let report = alg.run_phase(problem, budget, limit, &mut rng)?;
        records.push(ChangeRecord {
            change_index,
            budget,
            evals_consumed: report.evals,
            best_f: report.best.map(|b| b.0),
            best_cost: report.best.map(|b| b.1),
            archive_size: report.population,
            min_selection_prob: report.min_selection_prob,
            exceeds_t: report.evals > limit,
        });
    }
    Ok(RunTrace {
        algorithm,
        seed,
        problem_id: problem_id.to_string(),
        policy,
        records,
    })
}

/// Runs every job; results come back in job order. Jobs run concurrently
/// when the `parallel` feature is on.
pub fn run_batch(
    jobs: &[RunJob],
    options: &AlgorithmOptions,
    problem: &dyn Problem,
    problem_id: &str,
    schedule: &BudgetSchedule,
    policy: EvalPolicy,
) -> Vec<Result<RunTrace>> {
    let run = |job: &RunJob| {
        run_dynamic(
            job.algorithm,
            options,
            problem,
            problem_id,
            schedule,
            policy,
            job.seed,
        )
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        jobs.iter().map(run).collect()
    }
}
