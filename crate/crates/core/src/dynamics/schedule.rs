use std::io::{BufRead, Write};

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq)]
pub struct BudgetSchedule {
    pub initial: f64,
    /// Budget after each change, in order.
    pub budgets: Vec<f64>,
    pub bounds: (f64, f64),
    pub delta: f64,
}

impl BudgetSchedule {
    /// A schedule given explicitly; bounds and delta are read off the values.
    pub fn from_budgets(initial: f64, budgets: Vec<f64>) -> Self {
        let all = std::iter::once(initial).chain(budgets.iter().copied());
        let (low, high) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), b| {
            (l.min(b), h.max(b))
        });
        let delta = std::iter::once(initial)
            .chain(budgets.iter().copied())
            .zip(budgets.iter().copied())
            .map(|(a, b)| (b - a).abs())
            .fold(0.0, f64::max);
        BudgetSchedule {
            initial,
            budgets,
            bounds: (low, high),
            delta,
        }
    }

    pub fn n_changes(&self) -> usize {
        self.budgets.len()
    }

    /// Initial budget followed by every post-change budget.
    pub fn phases(&self) -> impl Iterator<Item = f64> + '_ {
        std::iter::once(self.initial).chain(self.budgets.iter().copied())
    }

    /// Budget minus the initial budget, per change.
    pub fn cumulative_changes(&self) -> Vec<f64> {
        self.budgets.iter().map(|b| b - self.initial).collect()
    }
}

/// Random walk: each change adds `u ~ U[-delta, delta]` and clamps into bounds.
pub fn gen_schedule(
    initial: f64,
    n_changes: usize,
    delta: f64,
    bounds: (f64, f64),
    rng: &mut RngStream,
) -> Result<BudgetSchedule> {
    let (low, high) = bounds;
    if !(low <= high && low <= initial && initial <= high) || delta.is_nan() || delta < 0.0 {
        return Err(Error::InvalidBounds { low, high, initial });
    }
    let mut current = initial;
    let budgets = (0..n_changes)
        .map(|_| {
            let step = if delta > 0.0 {
                rng.random_range(-delta..=delta)
            } else {
                0.0
            };
            current = (current + step).clamp(low, high);
            current
        })
        .collect();
    Ok(BudgetSchedule {
        initial,
        budgets,
        bounds,
        delta,
    })
}

/// Positional decimal with 17 significant digits, which round-trips every `f64`.
pub fn format_decimal17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.16}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (16 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Writes `initial <value>` followed by one budget per line.
pub fn write_schedule<W: Write>(mut w: W, schedule: &BudgetSchedule) -> std::io::Result<()> {
    writeln!(w, "initial {}", format_decimal17(schedule.initial))?;
    for b in &schedule.budgets {
        writeln!(w, "{}", format_decimal17(*b))?;
    }
    Ok(())
}

pub fn read_schedule<R: BufRead>(reader: R) -> Result<BudgetSchedule> {
    let mut initial = None;
    let mut budgets = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::MalformedSchedule {
            line: lineno,
            reason: e.to_string(),
        })?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parse = |tok: &str| {
            tok.parse::<f64>().map_err(|_| Error::MalformedSchedule {
                line: lineno,
                reason: format!("`{tok}` is not a number"),
            })
        };
        match initial {
            None => {
                let value =
                    line.strip_prefix("initial")
                        .ok_or_else(|| Error::MalformedSchedule {
                            line: lineno,
                            reason: "expected header `initial <value>`".into(),
                        })?;
                initial = Some(parse(value.trim())?);
            }
            Some(_) => budgets.push(parse(line)?),
        }
    }
    let initial = initial.ok_or(Error::MalformedSchedule {
        line: 0,
        reason: "empty schedule file".into(),
    })?;
    Ok(BudgetSchedule::from_budgets(initial, budgets))
}
