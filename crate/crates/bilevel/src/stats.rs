//! Aggregation of trial records and CSV emission.

use std::io::Write;

use crate::config::{Algorithm, Family};
use crate::experiment::TrialRecord;
use crate::error::HarnessError;

pub const RECORD_HEADER: [&str; 6] = ["trial", "seed", "evals_to_opt", "best_cost", "plateau", "wall_ms"];
pub const SUMMARY_HEADER: [&str; 8] =
    ["algo", "family", "m", "trials", "success_rate", "mean_evals", "median_evals", "p90_evals"];

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryStats {
    pub algorithm: Algorithm,
    pub family: Family,
    pub m: usize,
    pub trials: usize,
    pub success_rate: f64,
    /// Statistics of evaluations-to-optimum over successful trials only.
    pub mean_evals: Option<f64>,
    pub median_evals: Option<f64>,
    pub p90_evals: Option<f64>,
    /// `None` when some trial ended at infinite cost.
    pub mean_best_cost: Option<f64>,
}

/// Percentile `p` (0..=100) of sorted data, interpolating linearly between
/// the order statistics at ranks `floor(r)` and `ceil(r)`, `r = p/100 (n-1)`.
pub fn percentile(sorted: &[f64], p: f64) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let rank = p / 100.0 * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    Some(sorted[lo] + (sorted[hi] - sorted[lo]) * (rank - lo as f64))
}

pub fn summarize(algorithm: Algorithm, family: Family, m: usize, records: &[TrialRecord]) -> Option<SummaryStats> {
    if records.is_empty() {
        return None;
    }
    let mut evals: Vec<f64> =
        records.iter().filter_map(|r| r.evaluations_to_optimum).map(|e| e as f64).collect();
    evals.sort_by(f64::total_cmp);
    let mean_evals = (!evals.is_empty()).then(|| evals.iter().sum::<f64>() / evals.len() as f64);
    let costs: Option<Vec<f64>> = records.iter().map(|r| r.best_cost.finite().map(|c| c as f64)).collect();
    Some(SummaryStats {
        algorithm,
        family,
        m,
        trials: records.len(),
        success_rate: evals.len() as f64 / records.len() as f64,
        mean_evals,
        median_evals: percentile(&evals, 50.0),
        p90_evals: percentile(&evals, 90.0),
        mean_best_cost: costs.map(|c| c.iter().sum::<f64>() / c.len() as f64),
    })
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_records_csv<W: Write>(out: W, records: &[TrialRecord]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_HEADER)?;
    for r in records {
        w.write_record([
            r.trial_index.to_string(),
            r.seed.to_string(),
            opt(r.evaluations_to_optimum),
            r.best_cost.to_string(),
            r.hit_local_plateau.to_string(),
            opt(r.wall_ms),
        ])?;
    }
    w.flush().map_err(|e| HarnessError::Io("csv".into(), e))?;
    Ok(())
}

pub fn write_summary_csv<W: Write>(out: W, stats: &[SummaryStats]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for s in stats {
        w.write_record([
            s.algorithm.to_string(),
            s.family.to_string(),
            s.m.to_string(),
            s.trials.to_string(),
            s.success_rate.to_string(),
            opt(s.mean_evals),
            opt(s.median_evals),
            opt(s.p90_evals),
        ])?;
    }
    w.flush().map_err(|e| HarnessError::Io("csv".into(), e))?;
    Ok(())
}
