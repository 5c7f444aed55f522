use std::io::{Read, Write};

use serde::Serialize;

use super::runner::StepRow;
use crate::error::{Error, Result};

pub fn read_csv(input: impl Read) -> Result<Vec<StepRow>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize()
        .enumerate()
        .map(|(i, row)| {
            row.map_err(|e| Error::Parse {
                line: i + 2,
                msg: e.to_string(),
            })
        })
        .collect()
}

/// Aggregates recomputed from a per-step CSV.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregates {
    pub steps: usize,
    pub inserts: usize,
    pub deletes: usize,
    pub max_recourse: usize,
    pub mean_recourse: f64,
    pub total_recourse: usize,
    pub max_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
    pub max_cost_output: f64,
    pub final_cost_output: f64,
    pub intervals: u64,
}

pub fn aggregate(rows: &[StepRow]) -> Aggregates {
    let total_recourse: usize = rows.iter().map(|r| r.recourse).sum();
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).filter(|r| r.is_finite()).collect();
    let inserts = rows
        .iter()
        .filter(|r| r.kind == crate::UpdateKind::Insert)
        .count();
    Aggregates {
        steps: rows.len(),
        inserts,
        deletes: rows.len() - inserts,
        max_recourse: rows.iter().map(|r| r.recourse).max().unwrap_or(0),
        mean_recourse: total_recourse as f64 / rows.len().max(1) as f64,
        total_recourse,
        max_ratio: ratios.iter().copied().reduce(f64::max),
        mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
        max_cost_output: rows.iter().map(|r| r.cost_output).fold(0.0, f64::max),
        final_cost_output: rows.last().map_or(0.0, |r| r.cost_output),
        intervals: rows.iter().map(|r| r.interval).max().unwrap_or(0),
    }
}

/// Whitespace-separated columns for gnuplot: step, recourse, output cost,
/// background cost, optimum or bound, ratio (`NaN` when missing).
pub fn write_gnuplot(rows: &[StepRow], mut out: impl Write) -> Result<()> {
    writeln!(out, "# step recourse cost_output cost_background opt_or_lb ratio")?;
    for r in rows {
        writeln!(
            out,
            "{} {} {} {} {} {}",
            r.step,
            r.recourse,
            r.cost_output,
            r.cost_background,
            r.opt_or_lb.unwrap_or(f64::NAN),
            r.ratio.unwrap_or(f64::NAN)
        )?;
    }
    Ok(())
}
