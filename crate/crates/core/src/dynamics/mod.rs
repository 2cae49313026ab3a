//! Budget schedules and the orchestrator that replays them against an algorithm.

mod runner;
mod schedule;
mod summary;

pub use runner::{
    greedy_eval_count, run_batch, run_dynamic, ChangeRecord, EvalPolicy, RunJob, RunTrace,
};
pub use schedule::{format_decimal17, gen_schedule, read_schedule, write_schedule, BudgetSchedule};
pub use summary::{summarize, SummaryRow};
