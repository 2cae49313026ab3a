//! The Pareto archive: a population of mutually incomparable solutions.

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::solution::Solution;

/// Members are kept in insertion order; `best_feasible` uses that order to
/// break ties.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParetoArchive {
    members: Vec<Solution>,
}

impl ParetoArchive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Solution] {
        &self.members
    }

    pub fn get(&self, index: usize) -> Option<&Solution> {
        self.members.get(index)
    }

    /// Inserts `x` unless some member strictly dominates it. On acceptance
    /// every member weakly dominated by `x` (equal vectors included) is
    /// evicted first, so a duplicate replaces its twin.
    pub fn insert(&mut self, x: Solution) -> bool {
        if self.members.iter().any(|z| z.strictly_dominates(&x)) {
            return false;
        }
        self.members.retain(|z| !x.weakly_dominates(z));
        self.members.push(x);
        true
    }

    /// Index of a uniformly chosen member.
    pub fn uniform_index(&self, rng: &mut RngStream) -> Result<usize> {
        if self.members.is_empty() {
            return Err(Error::EmptyArchive);
        }
        Ok(rng.random_range(0..self.members.len()))
    }

    pub fn uniform_select(&self, rng: &mut RngStream) -> Result<&Solution> {
        let i = self.uniform_index(rng)?;
        Ok(&self.members[i])
    }

    /// Index of the member with the largest `f` among those with cost `<= budget`.
    /// Ties go to the lower cost, then to the earlier insertion.
    pub fn best_feasible_index(&self, budget: f64) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, m) in self.members.iter().enumerate() {
            if m.cost() > budget {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(j) => {
                    let b = &self.members[j];
                    if m.f_value() > b.f_value()
                        || (m.f_value() == b.f_value() && m.cost() < b.cost())
                    {
                        Some(i)
                    } else {
                        Some(j)
                    }
                }
            };
        }
        best
    }

    pub fn best_feasible(&self, budget: f64) -> Option<&Solution> {
        self.best_feasible_index(budget).map(|i| &self.members[i])
    }
}
