//! Exhaustive ground truth for tiny instances: exact optima, exact IC
//! expectations, submodularity ratios and the reduced-budget multiplier.

use crate::error::{Error, Result};
use crate::problems::{IcModel, LinearCost, Problem};
use crate::subset::Subset;

pub const MAX_BRUTE_FORCE_ITEMS: usize = 24;
pub const MAX_LIVE_EDGE_ARCS: usize = 20;
pub const MAX_RATIO_ITEMS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub opt_value: f64,
    pub opt_subset: Subset,
    pub enumerated_count: u64,
}

/// Scans all `2^n` subsets and returns the best one with `ĉ(X) <= budget`,
/// using the problem's noise-free objective. Ties go to the smallest mask.
pub fn brute_force_opt(problem: &dyn Problem, budget: f64) -> Result<OracleResult> {
    let n = problem.size();
    if n > MAX_BRUTE_FORCE_ITEMS {
        return Err(Error::InstanceTooLarge {
            size: n,
            max: MAX_BRUTE_FORCE_ITEMS,
        });
    }
    let total = 1u64 << n;
    let score = |mask: u64| -> Result<Option<(f64, u64)>> {
        let s = Subset::from_mask(n, mask);
        if problem.cost(&s) > budget {
            return Ok(None);
        }
        Ok(Some((problem.exact_value(&s)?, mask)))
    };
    let pick = |a: Option<(f64, u64)>, b: Option<(f64, u64)>| match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                Some(y)
            } else {
                Some(x)
            }
        }
    };

    #[cfg(feature = "parallel")]
    let best = {
        use rayon::prelude::*;
        (0..total)
            .into_par_iter()
            .map(score)
            .try_reduce(|| None, |a, b| Ok(pick(a, b)))?
    };
    #[cfg(not(feature = "parallel"))]
    let best = {
        let mut best = None;
        for mask in 0..total {
            best = pick(best, score(mask)?);
        }
        best
    };

    // the empty set is always feasible for budget >= 0
    let (opt_value, mask) = best.unwrap_or((0.0, 0));
    Ok(OracleResult {
        opt_value,
        opt_subset: Subset::from_mask(n, mask),
        enumerated_count: total,
    })
}

/// `E[|IC(seeds)|]` by summing reachability over every live-edge pattern.
pub fn exact_ic_expectation(model: &IcModel, seeds: &Subset) -> Result<f64> {
    exact_ic_moments(model, seeds).map(|(mean, _)| mean)
}

/// Mean and variance of `|IC(seeds)|` by live-edge enumeration.
pub fn exact_ic_moments(model: &IcModel, seeds: &Subset) -> Result<(f64, f64)> {
    let arcs = model.graph().arcs();
    let m = arcs.len();
    if m > MAX_LIVE_EDGE_ARCS {
        return Err(Error::TooManyEdges {
            edges: m,
            max: MAX_LIVE_EDGE_ARCS,
        });
    }
    let n = model.graph().n_vertices();
    let p = model.edge_probability();
    let mut mean = 0.0;
    let mut second = 0.0;
    let mut reached = vec![false; n];
    let mut stack = Vec::with_capacity(n);
    for pattern in 0u32..(1u32 << m) {
        let live = pattern.count_ones() as i32;
        let prob = p.powi(live) * (1.0 - p).powi(m as i32 - live);
        if prob == 0.0 {
            continue;
        }
        reached.iter_mut().for_each(|r| *r = false);
        stack.clear();
        for s in seeds.items() {
            reached[s] = true;
            stack.push(s);
        }
        let mut size = stack.len();
        while let Some(u) = stack.pop() {
            for (k, &(a, b)) in arcs.iter().enumerate() {
                if a as usize == u && pattern >> k & 1 == 1 && !reached[b as usize] {
                    reached[b as usize] = true;
                    size += 1;
                    stack.push(b as usize);
                }
            }
        }
        mean += prob * size as f64;
        second += prob * (size * size) as f64;
    }
    Ok((mean, (second - mean * mean).max(0.0)))
}

/// `min_{X ⊆ Y, v ∉ Y} (f(X+v) - f(X)) / (f(Y+v) - f(Y))`, reported in `[0, 1]`.
///
/// Pairs with a zero denominator are skipped (`0/0` is undefined and
/// `x/0` is `+∞`, never the minimum).
pub fn exact_submodularity_ratio<F>(f: F, n: usize) -> Result<f64>
where
    F: Fn(&Subset) -> f64,
{
    if n > MAX_RATIO_ITEMS {
        return Err(Error::InstanceTooLarge {
            size: n,
            max: MAX_RATIO_ITEMS,
        });
    }
    let values: Vec<f64> = (0..1u64 << n)
        .map(|m| f(&Subset::from_mask(n, m)))
        .collect();
    let full = (1u64 << n) - 1;
    let mut ratio = f64::INFINITY;
    for y in 0..=full {
        for v in (0..n).filter(|v| y >> v & 1 == 0) {
            let bit = 1u64 << v;
            let den = values[(y | bit) as usize] - values[y as usize];
            if den <= 0.0 {
                continue;
            }
            // walk every submask x of y, including y and 0
            let mut x = y;
            loop {
                let num = values[(x | bit) as usize] - values[x as usize];
                ratio = ratio.min(num / den);
                if x == 0 {
                    break;
                }
                x = (x - 1) & y;
            }
        }
    }
    Ok(if ratio.is_finite() {
        ratio.clamp(0.0, 1.0)
    } else {
        1.0
    })
}

/// `δ_ĉ`; for modular costs the smallest item cost.
pub fn min_marginal_cost(cost: &LinearCost) -> f64 {
    cost.min_item_cost()
}

/// `K_B`: the largest number of items that fit within `budget`.
pub fn max_feasible_cardinality(cost: &LinearCost, budget: f64) -> usize {
    let mut sorted = cost.item_costs().to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut spent = 0.0;
    let mut k = 0;
    for c in sorted {
        if spent + c > budget {
            break;
        }
        spent += c;
        k += 1;
    }
    k
}

/// Total curvature `1 - min_v (c(V) - c(V \ {v})) / c({v})`.
pub fn total_curvature(cost: &LinearCost) -> f64 {
    let n = cost.len();
    let all = Subset::full(n);
    let c_all = cost.total(&all);
    let min = (0..n)
        .map(|v| (c_all - cost.total(&all.without(v))) / cost.item(v))
        .fold(f64::INFINITY, f64::min);
    1.0 - min
}

/// Budget of the reduced-budget optimum:
/// `B · α_ĉ (1 + α_c² (K_B - 1)(1 - κ_c)) / (ψ K_B)`.
pub fn reduced_budget(
    budget: f64,
    alpha_c: f64,
    alpha_chat: f64,
    kappa_c: f64,
    psi: f64,
    k_b: usize,
) -> f64 {
    let k = k_b.max(1) as f64;
    budget * alpha_chat * (1.0 + alpha_c * alpha_c * (k - 1.0) * (1.0 - kappa_c)) / (psi * k)
}
