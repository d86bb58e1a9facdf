//! CSV emission.
//!
//! Run file: `experiment,algorithm,seed,iteration,y,best_so_far`, one row
//! per evaluation; initial-design rows carry iterations `-n_init..=-1`.
//! Points file (sibling `<stem>.points.csv`): `seed,iteration,x0..x{D-1}`.
//! Summary file: `iteration,mean,stderr`. Plot data: `iteration` followed by
//! `<name>_mean,<name>_stderr` per curve. Floats are written in shortest
//! round-trip form.

use std::path::{Path, PathBuf};

use super::summary::SummaryCurve;
use crate::error::{Error, Result};
use crate::record::RunRecord;

pub const RUN_HEADER: [&str; 6] = ["experiment", "algorithm", "seed", "iteration", "y", "best_so_far"];

/// `results/fig3.csv` → `results/fig3.points.csv`.
pub fn points_path(run_csv: &Path) -> PathBuf {
    let stem = run_csv.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    run_csv.with_file_name(format!("{stem}.points.csv"))
}

pub fn emit_csv(records: &[RunRecord], experiment: &str, algorithm: &str, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(RUN_HEADER)?;
    for r in records {
        for i in 0..r.len() {
            w.write_record([
                experiment.to_string(),
                algorithm.to_string(),
                r.seed.to_string(),
                r.iteration_label(i).to_string(),
                r.values[i].to_string(),
                r.best_so_far[i].to_string(),
            ])?;
        }
    }
    w.flush()?;

    let dim = records.first().and_then(|r| r.points.first()).map_or(0, |p| p.len());
    let mut w = csv::Writer::from_path(points_path(path))?;
    let mut header = vec!["seed".to_string(), "iteration".to_string()];
    header.extend((0..dim).map(|k| format!("x{k}")));
    w.write_record(&header)?;
    for r in records {
        for (i, x) in r.points.iter().enumerate() {
            let mut row = vec![r.seed.to_string(), r.iteration_label(i).to_string()];
            row.extend(x.iter().map(|v| v.to_string()));
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRow {
    pub experiment: String,
    pub algorithm: String,
    pub seed: u64,
    pub iteration: i64,
    pub y: f64,
    pub best_so_far: f64,
}

pub fn read_run_csv(path: &Path) -> Result<Vec<RunRow>> {
    let mut rd = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let field = |k: usize| rec.get(k).unwrap_or("");
        let bad = |what: &str| Error::Dataset { line: i + 2, message: format!("bad {what}") };
        out.push(RunRow {
            experiment: field(0).to_string(),
            algorithm: field(1).to_string(),
            seed: field(2).parse().map_err(|_| bad("seed"))?,
            iteration: field(3).parse().map_err(|_| bad("iteration"))?,
            y: field(4).parse().map_err(|_| bad("y"))?,
            best_so_far: field(5).parse().map_err(|_| bad("best_so_far"))?,
        });
    }
    Ok(out)
}

pub fn emit_summary_csv(curve: &SummaryCurve, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["iteration", "mean", "stderr"])?;
    for t in 0..curve.len() {
        w.write_record([(t + 1).to_string(), curve.mean[t].to_string(), curve.stderr[t].to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_plot_data(curves: &[(String, SummaryCurve)], path: &Path) -> Result<()> {
    if let Some((_, first)) = curves.first() {
        if let Some((name, c)) = curves.iter().find(|(_, c)| c.len() != first.len()) {
            return Err(Error::LengthMismatch(format!(
                "curve `{name}` has {} points, expected {}",
                c.len(),
                first.len()
            )));
        }
    }
    let mut w = csv::Writer::from_path(path)?;
    let mut header = vec!["iteration".to_string()];
    for (name, _) in curves {
        header.push(format!("{name}_mean"));
        header.push(format!("{name}_stderr"));
    }
    w.write_record(&header)?;
    let len = curves.first().map_or(0, |(_, c)| c.len());
    for t in 0..len {
        let mut row = vec![(t + 1).to_string()];
        for (_, c) in curves {
            row.push(c.mean[t].to_string());
            row.push(c.stderr[t].to_string());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
