//! Utility evaluation: precision@N, average precision, and the experiment
//! harness comparing Bloom filter models against exact keyword vectors.

mod experiment;
mod metrics;

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::error::Result;

pub use experiment::{
    perturb_histories, row_seed, run_experiment, BinaryVectorModel, Evaluator, ExperimentConfig,
    Model, ResultRow,
};
pub use metrics::{average_precision, precision_at_n};

pub const RESULTS_HEADER: [&str; 8] = [
    "model",
    "m",
    "k",
    "epsilon",
    "job_id",
    "run",
    "precision_at_n",
    "average_precision",
];

pub const SUMMARY_HEADER: [&str; 9] = [
    "model",
    "m",
    "k",
    "epsilon",
    "rows",
    "mean_precision_at_n",
    "std_precision_at_n",
    "mean_average_precision",
    "std_average_precision",
];

/// Mean and sample standard deviation of one configuration's rows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub model: Model,
    pub m: Option<usize>,
    pub k: Option<u32>,
    pub epsilon: Option<f64>,
    pub rows: usize,
    pub mean_precision: f64,
    pub std_precision: f64,
    pub mean_ap: f64,
    pub std_ap: f64,
}

impl SummaryRow {
    /// Standard error of the mean precision.
    pub fn se_precision(&self) -> f64 {
        self.std_precision / (self.rows as f64).sqrt()
    }
}

pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

/// Groups rows by (model, m, k, epsilon), in sorted order.
pub fn summarize(rows: &[ResultRow]) -> Vec<SummaryRow> {
    type Key = (Model, usize, u32, u64);
    type Group = (Option<usize>, Option<u32>, Option<f64>, Vec<f64>, Vec<f64>);
    let mut groups: BTreeMap<Key, Group> = BTreeMap::new();
    for r in rows {
        let key = (
            r.model,
            r.m.unwrap_or(0),
            r.k.unwrap_or(0),
            r.epsilon.map_or(0, f64::to_bits),
        );
        let g = groups
            .entry(key)
            .or_insert_with(|| (r.m, r.k, r.epsilon, Vec::new(), Vec::new()));
        g.3.push(r.precision_at_n);
        g.4.push(r.average_precision);
    }
    groups
        .into_iter()
        .map(|((model, ..), (m, k, epsilon, prec, ap))| {
            let (mean_precision, std_precision) = mean_std(&prec);
            let (mean_ap, std_ap) = mean_std(&ap);
            SummaryRow {
                model,
                m,
                k,
                epsilon,
                rows: prec.len(),
                mean_precision,
                std_precision,
                mean_ap,
                std_ap,
            }
        })
        .collect()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_results_csv<W: Write>(out: W, rows: &[ResultRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULTS_HEADER)?;
    for r in rows {
        w.write_record([
            r.model.name().to_string(),
            opt(r.m),
            opt(r.k),
            opt(r.epsilon),
            r.job_id.clone(),
            r.run.to_string(),
            r.precision_at_n.to_string(),
            r.average_precision.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_summary_csv<W: Write>(out: W, summary: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for s in summary {
        w.write_record([
            s.model.name().to_string(),
            opt(s.m),
            opt(s.k),
            opt(s.epsilon),
            s.rows.to_string(),
            s.mean_precision.to_string(),
            s.std_precision.to_string(),
            s.mean_ap.to_string(),
            s.std_ap.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
