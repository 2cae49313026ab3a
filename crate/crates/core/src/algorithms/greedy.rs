//! The generalized greedy algorithm (GGA) and its adaptive variant (AGGA).
//!
//! Both pick items by the ratio of marginal objective gain to marginal
//! cost. `f(X)` of the current selection is carried over from the
//! evaluation that chose the last item, so a full run from scratch uses at
//! most `n(n+1)/2` evaluations.

use crate::error::Result;
use crate::problems::Problem;
use crate::rng::RngStream;
use crate::solution::EvalCounter;
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyState {
    pub selection: Subset,
    pub order_added: Vec<usize>,
    pub f_value: f64,
    pub cost: f64,
}

impl GreedyState {
    pub fn empty(n: usize) -> Self {
        GreedyState {
            selection: Subset::empty(n),
            order_added: Vec::new(),
            f_value: 0.0,
            cost: 0.0,
        }
    }
}

/// Adds items by best gain/cost ratio until nothing fits in `budget`.
/// Items that do not fit are dropped for good (costs only grow).
///
/// Returns `f({v})` for every evaluated item when starting from the empty set.
fn greedy_add(
    state: &mut GreedyState,
    problem: &dyn Problem,
    budget: f64,
    counter: &mut EvalCounter,
    rng: &mut RngStream,
) -> Result<Vec<(usize, f64)>> {
    let n = problem.size();
    let from_empty = state.selection.is_empty();
    let mut singles = Vec::new();
    let mut candidates: Vec<usize> = (0..n).filter(|&v| !state.selection.contains(v)).collect();

    loop {
        // (ratio, item, f(X ∪ v), ĉ(X ∪ v))
        let mut best: Option<(f64, usize, f64, f64)> = None;
        let mut kept = Vec::with_capacity(candidates.len());
        for &v in &candidates {
            let trial = state.selection.with(v);
            let new_cost = problem.cost(&trial);
            if new_cost > budget {
                continue;
            }
            counter.consume()?;
            let new_f = problem.value(&trial, rng);
            if from_empty && state.selection.is_empty() {
                singles.push((v, new_f));
            }
            let ratio = (new_f - state.f_value) / (new_cost - state.cost);
            // strict comparison: the lowest id wins ties
            if best.is_none_or(|(r, ..)| ratio > r) {
                best = Some((ratio, v, new_f, new_cost));
            }
            kept.push(v);
        }
        let Some((_, v, new_f, new_cost)) = best else {
            break;
        };
        state.selection.insert(v);
        state.order_added.push(v);
        state.f_value = new_f;
        state.cost = new_cost;
        kept.retain(|&u| u != v);
        candidates = kept;
    }
    Ok(singles)
}

/// GGA from scratch at `budget`: the greedy selection or the best single
/// feasible item, whichever has the larger objective value.
pub fn gga(
    problem: &dyn Problem,
    budget: f64,
    counter: &mut EvalCounter,
    rng: &mut RngStream,
) -> Result<GreedyState> {
    let n = problem.size();
    let mut state = GreedyState::empty(n);
    let singles = greedy_add(&mut state, problem, budget, counter, rng)?;

    let mut best_single: Option<(usize, f64)> = None;
    for &(v, f) in &singles {
        if best_single.is_none_or(|(_, bf)| f > bf) {
            best_single = Some((v, f));
        }
    }
    if let Some((v, f)) = best_single {
        if f > state.f_value {
            let selection = Subset::from_items(n, [v]);
            return Ok(GreedyState {
                cost: problem.cost(&selection),
                selection,
                order_added: vec![v],
                f_value: f,
            });
        }
    }
    Ok(state)
}

/// Adapts a previous GGA/AGGA result to `new_budget`: drops the item with
/// the smallest gain/cost ratio until the selection fits, then resumes
/// greedy additions.
pub fn agga_adapt(
    state: &mut GreedyState,
    problem: &dyn Problem,
    new_budget: f64,
    counter: &mut EvalCounter,
    rng: &mut RngStream,
) -> Result<()> {
    while state.cost > new_budget {
        // (ratio, item, f(X \ v), ĉ(X \ v))
        let mut worst: Option<(f64, usize, f64, f64)> = None;
        for v in state.selection.items() {
            let trial = state.selection.without(v);
            counter.consume()?;
            let f_without = problem.value(&trial, rng);
            let c_without = problem.cost(&trial);
            let ratio = (state.f_value - f_without) / (state.cost - c_without);
            if worst.is_none_or(|(r, ..)| ratio < r) {
                worst = Some((ratio, v, f_without, c_without));
            }
        }
        let (_, v, f_without, c_without) = worst.expect("selection is nonempty while over budget");
        state.selection.remove(v);
        state.order_added.retain(|&u| u != v);
        state.f_value = f_without;
        state.cost = c_without;
    }
    greedy_add(state, problem, new_budget, counter, rng)?;
    Ok(())
}

/// GGA re-run from scratch at every budget.
#[derive(Debug, Clone, Default)]
pub struct GgaRestart {
    last: Option<GreedyState>,
}

impl GgaRestart {
    pub fn new() -> Self {
        Self::default()
    }
}

impl super::DynamicAlgorithm for GgaRestart {
    fn run_phase(
        &mut self,
        problem: &dyn Problem,
        budget: f64,
        _eval_limit: u64,
        rng: &mut RngStream,
    ) -> Result<super::PhaseReport> {
        let mut counter = EvalCounter::unlimited();
        let st = gga(problem, budget, &mut counter, rng)?;
        let report = super::PhaseReport {
            evals: counter.count(),
            best: Some((st.f_value, st.cost)),
            population: 1,
            min_selection_prob: None,
        };
        self.last = Some(st);
        Ok(report)
    }
}

/// AGGA: GGA at the first budget, then adaptation at each change.
#[derive(Debug, Clone, Default)]
pub struct Agga {
    state: Option<GreedyState>,
}

impl Agga {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(&self) -> Option<&GreedyState> {
        self.state.as_ref()
    }
}

impl super::DynamicAlgorithm for Agga {
    fn run_phase(
        &mut self,
        problem: &dyn Problem,
        budget: f64,
        _eval_limit: u64,
        rng: &mut RngStream,
    ) -> Result<super::PhaseReport> {
        let mut counter = EvalCounter::unlimited();
        match &mut self.state {
            None => self.state = Some(gga(problem, budget, &mut counter, rng)?),
            Some(st) => agga_adapt(st, problem, budget, &mut counter, rng)?,
        }
        let st = self.state.as_ref().expect("set above");
        Ok(super::PhaseReport {
            evals: counter.count(),
            best: Some((st.f_value, st.cost)),
            population: 1,
            min_selection_prob: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_opt;
    use crate::problems::{CoverageInstance, CoverageProblem, LinearCost, SetFunctionProblem};

    fn three_sets() -> CoverageProblem {
        CoverageProblem::new(
            CoverageInstance::new(4, &[vec![0, 1], vec![1, 2], vec![3]]),
            LinearCost::unit(3),
        )
    }

    fn run_gga(p: &dyn Problem, b: f64) -> (GreedyState, u64) {
        let mut c = EvalCounter::unlimited();
        let st = gga(p, b, &mut c, &mut RngStream::new(0)).unwrap();
        (st, c.count())
    }

    #[test]
    fn zero_budget_gives_empty() {
        let (st, evals) = run_gga(&three_sets(), 0.0);
        assert!(st.selection.is_empty());
        assert_eq!(st.f_value, 0.0);
        assert_eq!(evals, 0);
    }

    #[test]
    fn matches_optimum_on_three_sets() {
        let p = three_sets();
        let (st, _) = run_gga(&p, 2.0);
        assert_eq!(st.f_value, 3.0);
        assert_eq!(st.f_value, brute_force_opt(&p, 2.0).unwrap().opt_value);
        let (st, _) = run_gga(&p, 3.0);
        assert_eq!(st.f_value, 4.0);
    }

    #[test]
    fn full_add_uses_triangular_count() {
        for n in [1usize, 4, 9] {
            let sets: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
            let p = CoverageProblem::new(CoverageInstance::new(n, &sets), LinearCost::unit(n));
            let (st, evals) = run_gga(&p, n as f64);
            assert_eq!(st.selection.count(), n);
            assert_eq!(evals, (n * (n + 1) / 2) as u64);
        }
    }

    #[test]
    fn single_item_fallback_wins_when_greedy_path_is_poor() {
        // cheap item a has the best ratio but little value; b alone fills the budget
        let costs = LinearCost::new(vec![0.01, 1.0]).unwrap();
        let p = SetFunctionProblem::new(costs, |s: &Subset| {
            let mut v = 0.0;
            if s.contains(0) {
                v += 0.5;
            }
            if s.contains(1) {
                v += 0.99;
            }
            v
        });
        let (st, evals) = run_gga(&p, 1.0);
        assert_eq!(st.selection, Subset::from_items(2, [1]));
        assert_eq!(st.f_value, 0.99);
        assert_eq!(evals, 2);
    }

    #[test]
    fn agga_fixed_point_and_empty_budget() {
        let p = three_sets();
        let (st, _) = run_gga(&p, 2.0);
        let mut adapted = st.clone();
        let mut c = EvalCounter::unlimited();
        agga_adapt(&mut adapted, &p, 2.0, &mut c, &mut RngStream::new(1)).unwrap();
        assert_eq!(adapted, st);
        assert_eq!(c.count(), 0);

        agga_adapt(&mut adapted, &p, 0.0, &mut c, &mut RngStream::new(1)).unwrap();
        assert!(adapted.selection.is_empty());
        assert_eq!(adapted.cost, 0.0);
    }

    #[test]
    fn agga_removes_smallest_ratio() {
        let p = CoverageProblem::new(
            CoverageInstance::new(2, &[vec![0, 1], vec![1]]),
            LinearCost::unit(2),
        );
        let mut st = GreedyState {
            selection: Subset::full(2),
            order_added: vec![0, 1],
            f_value: 2.0,
            cost: 2.0,
        };
        let mut c = EvalCounter::unlimited();
        agga_adapt(&mut st, &p, 1.0, &mut c, &mut RngStream::new(0)).unwrap();
        assert_eq!(st.selection, Subset::from_items(2, [0]));
        assert_eq!(st.f_value, 2.0);
        assert_eq!(st.order_added, vec![0]);
    }

    #[test]
    fn agga_growth_never_removes() {
        let sets: Vec<Vec<usize>> = (0..8).map(|i| vec![i, (i + 2) % 8]).collect();
        let p = CoverageProblem::new(
            CoverageInstance::new(8, &sets),
            LinearCost::new((0..8).map(|i| 1.0 + (i % 3) as f64).collect()).unwrap(),
        );
        let (mut st, _) = run_gga(&p, 4.0);
        let before = st.selection.clone();
        let mut c = EvalCounter::unlimited();
        agga_adapt(&mut st, &p, 9.0, &mut c, &mut RngStream::new(0)).unwrap();
        assert!(before.is_subset_of(&st.selection));
        assert!(st.cost <= 9.0);
        agga_adapt(&mut st, &p, 2.5, &mut c, &mut RngStream::new(0)).unwrap();
        assert!(st.cost <= 2.5);
    }
}
