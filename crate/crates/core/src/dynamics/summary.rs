use super::RunTrace;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub change_index: usize,
    pub budget: f64,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single trace.
    pub std: f64,
    pub runs: usize,
}

/// Mean and sample standard deviation of `best_f` per change index.
///
/// Values are sorted before summation, so the result does not depend on the
/// order of `traces`.
pub fn summarize(traces: &[RunTrace]) -> Result<Vec<SummaryRow>> {
    let first = traces
        .first()
        .ok_or_else(|| Error::MismatchedTraces("no traces".into()))?;
    for t in traces {
        if t.algorithm != first.algorithm {
            return Err(Error::MismatchedTraces(format!(
                "algorithms {} and {}",
                first.algorithm, t.algorithm
            )));
        }
        let same_schedule = t.records.len() == first.records.len()
            && t.records
                .iter()
                .zip(&first.records)
                .all(|(a, b)| a.budget.to_bits() == b.budget.to_bits());
        if !same_schedule {
            return Err(Error::MismatchedTraces(
                "traces follow different schedules".into(),
            ));
        }
    }

    let runs = traces.len();
    Ok(first
        .records
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            let mut values: Vec<f64> = traces
                .iter()
                .map(|t| t.records[i].best_f.unwrap_or(0.0))
                .collect();
            values.sort_by(f64::total_cmp);
            let mean = values.iter().sum::<f64>() / runs as f64;
            let std = if runs > 1 {
                let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
                (ss / (runs - 1) as f64).sqrt()
            } else {
                0.0
            };
            SummaryRow {
                change_index: rec.change_index,
                budget: rec.budget,
                mean,
                std,
                runs,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::AlgorithmKind;
    use crate::dynamics::{ChangeRecord, EvalPolicy};

    fn trace(alg: AlgorithmKind, values: &[f64]) -> RunTrace {
        RunTrace {
            algorithm: alg,
            seed: 0,
            problem_id: "t".into(),
            policy: EvalPolicy {
                t_initial: 1,
                t_change: 1,
            },
            records: values
                .iter()
                .enumerate()
                .map(|(i, &v)| ChangeRecord {
                    change_index: i,
                    budget: 10.0 + i as f64,
                    evals_consumed: 1,
                    best_f: Some(v),
                    best_cost: Some(1.0),
                    archive_size: 1,
                    min_selection_prob: None,
                    exceeds_t: false,
                })
                .collect(),
        }
    }

    #[test]
    fn single_trace_has_zero_std() {
        let rows = summarize(&[trace(AlgorithmKind::Pomc, &[3.0, 4.0])]).unwrap();
        assert_eq!(rows[0].mean, 3.0);
        assert_eq!(rows[1].std, 0.0);
    }

    #[test]
    fn two_traces_sample_std() {
        let rows = summarize(&[
            trace(AlgorithmKind::Pomc, &[4.0]),
            trace(AlgorithmKind::Pomc, &[6.0]),
        ])
        .unwrap();
        assert_eq!(rows[0].mean, 5.0);
        assert_eq!(rows[0].std, 2f64.sqrt());
    }

    #[test]
    fn order_does_not_matter() {
        let vals = [0.1, 0.7, 1e16, 0.3, 2.2, -5.5, 3.3];
        let mut traces: Vec<RunTrace> = vals
            .iter()
            .map(|&v| trace(AlgorithmKind::Bpodc, &[v, v * 2.0]))
            .collect();
        let a = summarize(&traces).unwrap();
        traces.reverse();
        traces.swap(1, 4);
        assert_eq!(summarize(&traces).unwrap(), a);
    }

    #[test]
    fn mismatches_rejected() {
        assert!(summarize(&[]).is_err());
        let a = trace(AlgorithmKind::Pomc, &[1.0]);
        assert!(summarize(&[a.clone(), trace(AlgorithmKind::Gga, &[1.0])]).is_err());
        assert!(summarize(&[a, trace(AlgorithmKind::Pomc, &[1.0, 2.0])]).is_err());
    }
}
