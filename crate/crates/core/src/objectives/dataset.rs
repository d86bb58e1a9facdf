//! Numeric CSV datasets for the cascade objective.
//!
//! Format: one row per line, comma separated, numeric features; an optional
//! header is detected when the first non-empty line does not parse as
//! numbers. The label column is chosen by index (negative counts from the
//! end) and compared as trimmed text against the positive label. A file may
//! hold at most two distinct labels; the non-positive one maps to -1.
//! Features are min-max scaled per column to `[0, 1]`; constant columns
//! become 0.5.

use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetTable {
    rows: Vec<Vec<f64>>,
    labels: Vec<f64>,
}

impl DatasetTable {
    /// Rows must already be scaled to `[0, 1]`; labels are `±1`.
    pub fn new(rows: Vec<Vec<f64>>, labels: Vec<f64>) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::LengthMismatch(format!("{} rows but {} labels", rows.len(), labels.len())));
        }
        let m = rows.first().map_or(0, |r| r.len());
        for (i, (r, &l)) in rows.iter().zip(&labels).enumerate() {
            if r.len() != m {
                return Err(Error::Dataset { line: i + 1, message: format!("expected {m} features, got {}", r.len()) });
            }
            if r.iter().any(|v| !(0.0..=1.0).contains(v)) {
                return Err(Error::Dataset { line: i + 1, message: "feature outside [0, 1]".into() });
            }
            if l != 1.0 && l != -1.0 {
                return Err(Error::Dataset { line: i + 1, message: format!("label {l} is not ±1") });
            }
        }
        Ok(Self { rows, labels })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn features(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn label(&self, i: usize) -> f64 {
        self.labels[i]
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabelSpec {
    /// Column index; negative values count from the end (`-1` is the last).
    pub column: i64,
    pub positive: String,
}

pub fn load_dataset(path: impl AsRef<Path>, labels: &LabelSpec) -> Result<DatasetTable> {
    let text = std::fs::read_to_string(path)?;
    parse_dataset(&text, labels)
}

pub fn parse_dataset(text: &str, spec: &LabelSpec) -> Result<DatasetTable> {
    let mut raw: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<f64> = Vec::new();
    let mut negative: Option<String> = None;
    let mut width: Option<usize> = None;
    let mut header_checked = false;

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let n = fields.len();
        let col = if spec.column < 0 { n as i64 + spec.column } else { spec.column };
        if col < 0 || col as usize >= n {
            return Err(Error::Dataset { line: lineno, message: format!("label column {} out of range", spec.column) });
        }
        let col = col as usize;
        let parsed: std::result::Result<Vec<f64>, _> = fields
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != col)
            .map(|(_, f)| f.parse::<f64>())
            .collect();

        if !header_checked {
            header_checked = true;
            if parsed.is_err() {
                continue;
            }
        }
        let feats = parsed.map_err(|e| Error::Dataset { line: lineno, message: format!("unparseable value: {e}") })?;
        if feats.iter().any(|v| !v.is_finite()) {
            return Err(Error::Dataset { line: lineno, message: "non-finite feature".into() });
        }
        match width {
            None => width = Some(n),
            Some(w) if w != n => {
                return Err(Error::Dataset { line: lineno, message: format!("expected {w} fields, got {n}") })
            }
            _ => {}
        }

        let label = fields[col];
        let y = if label == spec.positive {
            1.0
        } else {
            match &negative {
                None => {
                    negative = Some(label.to_string());
                    -1.0
                }
                Some(neg) if neg == label => -1.0,
                Some(neg) => {
                    return Err(Error::Dataset {
                        line: lineno,
                        message: format!("unknown label '{label}' (positive '{}', negative '{neg}')", spec.positive),
                    })
                }
            }
        };
        raw.push(feats);
        labels.push(y);
    }

    let m = raw.first().map_or(0, |r| r.len());
    for j in 0..m {
        let (lo, hi) = raw.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r[j]), hi.max(r[j])));
        for r in raw.iter_mut() {
            r[j] = if hi > lo { ((r[j] - lo) / (hi - lo)).clamp(0.0, 1.0) } else { 0.5 };
        }
    }
    DatasetTable::new(raw, labels)
}
