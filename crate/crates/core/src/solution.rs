//! Evaluated solutions, the bi-objective vector and the domination relation.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::rng::RngStream;
use crate::subset::Subset;

/// First objective: the objective value, or a sentinel below every real
/// number for solutions whose cost exceeds `B + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fitness {
    NegInfinity,
    Value(f64),
}

impl Fitness {
    pub fn value(self) -> Option<f64> {
        match self {
            Fitness::NegInfinity => None,
            Fitness::Value(v) => Some(v),
        }
    }

    pub fn is_neg_infinity(self) -> bool {
        matches!(self, Fitness::NegInfinity)
    }
}

impl PartialOrd for Fitness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Fitness::NegInfinity, Fitness::NegInfinity) => Some(Ordering::Equal),
            (Fitness::NegInfinity, Fitness::Value(_)) => Some(Ordering::Less),
            (Fitness::Value(_), Fitness::NegInfinity) => Some(Ordering::Greater),
            (Fitness::Value(a), Fitness::Value(b)) => a.partial_cmp(b),
        }
    }
}

/// Outcome of comparing two objective vectors.
///
/// Weak domination in both directions is `Equal`; weak domination in one
/// direction only is always strict, so the five textbook cases collapse to
/// four variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Dominates,
    DominatedBy,
    Equal,
    Incomparable,
}

/// An evaluated subset. The objective vector is frozen at creation time;
/// later budget changes never rewrite it.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    bits: Subset,
    f_value: f64,
    cost: f64,
    f1: Fitness,
    gen_budget: f64,
}

impl Solution {
    /// Assembles a solution from already-computed `f` and `ĉ` values.
    pub fn from_values(bits: Subset, f_value: f64, cost: f64, budget: f64) -> Self {
        let f1 = if cost > budget + 1.0 {
            Fitness::NegInfinity
        } else {
            Fitness::Value(f_value)
        };
        Solution {
            bits,
            f_value,
            cost,
            f1,
            gen_budget: budget,
        }
    }

    /// The empty set, using the normalization `f(∅) = ĉ(∅) = 0`.
    pub fn empty(n: usize, budget: f64) -> Self {
        Self::from_values(Subset::empty(n), 0.0, 0.0, budget)
    }

    pub fn bits(&self) -> &Subset {
        &self.bits
    }

    pub fn f_value(&self) -> f64 {
        self.f_value
    }

    pub fn cost(&self) -> f64 {
        self.cost
    }

    pub fn f1(&self) -> Fitness {
        self.f1
    }

    pub fn f2(&self) -> f64 {
        -self.cost
    }

    /// Budget in force when this solution was evaluated.
    pub fn gen_budget(&self) -> f64 {
        self.gen_budget
    }

    pub fn weakly_dominates(&self, other: &Solution) -> bool {
        self.f1 >= other.f1 && self.f2() >= other.f2()
    }

    pub fn strictly_dominates(&self, other: &Solution) -> bool {
        self.weakly_dominates(other) && (self.f1 > other.f1 || self.f2() > other.f2())
    }
}

pub fn dominates(a: &Solution, b: &Solution) -> Relation {
    match (a.weakly_dominates(b), b.weakly_dominates(a)) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::Dominates,
        (false, true) => Relation::DominatedBy,
        (false, false) => Relation::Incomparable,
    }
}

/// Counts objective evaluations against a limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalCounter {
    count: u64,
    limit: u64,
}

impl EvalCounter {
    pub fn new(limit: u64) -> Self {
        EvalCounter { count: 0, limit }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.count
    }

    pub fn is_exhausted(&self) -> bool {
        self.count >= self.limit
    }

    /// Allows `extra` more evaluations beyond those already consumed.
    pub fn extend(&mut self, extra: u64) {
        self.limit = self.count.saturating_add(extra);
    }

    pub fn consume(&mut self) -> Result<()> {
        if self.is_exhausted() {
            return Err(Error::BudgetExhausted { limit: self.limit });
        }
        self.count += 1;
        Ok(())
    }
}

/// Evaluates `bits` under budget `budget`, consuming one evaluation.
pub fn evaluate(
    problem: &dyn Problem,
    bits: Subset,
    budget: f64,
    counter: &mut EvalCounter,
    rng: &mut RngStream,
) -> Result<Solution> {
    counter.consume()?;
    let cost = problem.cost(&bits);
    let f_value = problem.value(&bits, rng);
    Ok(Solution::from_values(bits, f_value, cost, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{LinearCost, SetFunctionProblem};

    fn sol(f1: f64, f2: f64) -> Solution {
        Solution::from_values(Subset::empty(1), f1, -f2, f64::INFINITY)
    }

    #[test]
    fn relation_cases() {
        assert_eq!(dominates(&sol(5., -2.), &sol(3., -4.)), Relation::Dominates);
        assert_eq!(
            dominates(&sol(3., -4.), &sol(5., -2.)),
            Relation::DominatedBy
        );
        assert_eq!(dominates(&sol(5., -2.), &sol(5., -2.)), Relation::Equal);
        assert_eq!(
            dominates(&sol(5., -4.), &sol(3., -2.)),
            Relation::Incomparable
        );
        // one coordinate tied, the other better
        assert_eq!(dominates(&sol(5., -2.), &sol(5., -3.)), Relation::Dominates);
    }

    #[test]
    fn neg_infinity_orders_below_reals() {
        assert!(Fitness::NegInfinity < Fitness::Value(-1e300));
        let dead = Solution::from_values(Subset::empty(1), 100.0, 10.0, 2.0);
        assert!(dead.f1().is_neg_infinity());
        let alive = Solution::from_values(Subset::empty(1), 0.0, 10.0, 100.0);
        // same cost, real f1 beats the sentinel
        assert_eq!(dominates(&alive, &dead), Relation::Dominates);
    }

    fn toy() -> SetFunctionProblem {
        SetFunctionProblem::new(
            LinearCost::new(vec![1.0, 2.0, 3.0]).unwrap(),
            |s: &Subset| s.items().map(|i| (i + 1) as f64).sum(),
        )
    }

    #[test]
    fn evaluate_threshold_inclusive() {
        let p = toy();
        let mut counter = EvalCounter::new(10);
        let mut rng = RngStream::new(0);
        let empty = evaluate(&p, Subset::empty(3), 0.0, &mut counter, &mut rng).unwrap();
        assert_eq!(empty.f1(), Fitness::Value(0.0));
        assert_eq!(empty.f2(), 0.0);

        // cost 3 == B + 1 with B = 2
        let s = evaluate(&p, Subset::from_items(3, [2]), 2.0, &mut counter, &mut rng).unwrap();
        assert_eq!(s.f1(), Fitness::Value(3.0));
        // cost 3 == B + 1.5 with B = 0.5
        let s = evaluate(&p, Subset::from_items(3, [2]), 0.5, &mut counter, &mut rng).unwrap();
        assert_eq!(s.f1(), Fitness::NegInfinity);
        assert_eq!(s.f2(), -3.0);
        assert_eq!(s.gen_budget(), 0.5);
        assert_eq!(counter.count(), 3);
    }

    #[test]
    fn evaluate_stops_at_limit() {
        let p = toy();
        let mut counter = EvalCounter::new(1);
        let mut rng = RngStream::new(0);
        evaluate(&p, Subset::empty(3), 1.0, &mut counter, &mut rng).unwrap();
        let err = evaluate(&p, Subset::empty(3), 1.0, &mut counter, &mut rng).unwrap_err();
        assert_eq!(err, Error::BudgetExhausted { limit: 1 });
        assert_eq!(counter.count(), 1);
    }
}
