use crate::error::{Error, Result};
use crate::record::{RunRecord, Sense};

/// Pointwise mean and standard error of best-so-far across replications,
/// over the post-initialization iterations.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryCurve {
    pub sense: Sense,
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
}

impl SummaryCurve {
    pub fn len(&self) -> usize {
        self.mean.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mean.is_empty()
    }
}

/// Standard error is `s / √n` with `s` the unbiased sample deviation; a
/// single record has zero standard error.
pub fn summarize(records: &[RunRecord]) -> Result<SummaryCurve> {
    let first = records
        .first()
        .ok_or_else(|| Error::LengthMismatch("no records to summarize".into()))?;
    let len = first.iteration_best().len();
    for r in records {
        if r.iteration_best().len() != len || r.sense != first.sense {
            return Err(Error::LengthMismatch(format!(
                "records disagree: {} vs {} iterations",
                len,
                r.iteration_best().len()
            )));
        }
    }
    let n = records.len() as f64;
    let mut mean = Vec::with_capacity(len);
    let mut stderr = Vec::with_capacity(len);
    for t in 0..len {
        let m = records.iter().map(|r| r.iteration_best()[t]).sum::<f64>() / n;
        let se = if records.len() > 1 {
            let var = records.iter().map(|r| (r.iteration_best()[t] - m).powi(2)).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        } else {
            0.0
        };
        mean.push(m);
        stderr.push(se);
    }
    Ok(SummaryCurve {
        sense: first.sense,
        mean,
        stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(v: f64, iters: usize) -> RunRecord {
        let mut r = RunRecord::new(0, 1, Sense::Maximize);
        for _ in 0..=iters {
            r.push(vec![0.0], v);
        }
        r
    }

    #[test]
    fn single_record() {
        let c = summarize(&[constant(2.5, 3)]).unwrap();
        assert_eq!(c.mean, vec![2.5; 3]);
        assert_eq!(c.stderr, vec![0.0; 3]);
    }

    #[test]
    fn two_constant_records() {
        let c = summarize(&[constant(1.0, 4), constant(3.0, 4)]).unwrap();
        assert_eq!(c.mean, vec![2.0; 4]);
        for s in c.stderr {
            assert!((s - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn identical_records_have_zero_error() {
        let c = summarize(&[constant(1.5, 2), constant(1.5, 2), constant(1.5, 2)]).unwrap();
        assert_eq!(c.stderr, vec![0.0; 2]);
    }

    #[test]
    fn length_mismatch() {
        assert!(summarize(&[constant(1.0, 2), constant(1.0, 3)]).is_err());
        assert!(summarize(&[]).is_err());
    }
}
