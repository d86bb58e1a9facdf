//! Regret bookkeeping and the computable quantities of the dropout regret
//! bound: the Lipschitz constant `L`, the gap `L(D - d)` and the inflated
//! deviation `σ' = σ + L(D - d)/√β`.

use crate::acquisition::BetaSchedule;
use crate::error::{Error, Result};
use crate::record::{RunRecord, Sense};

/// `b · √log(2(D - d) a / δ)`. With `D == d` nothing is left out and the
/// bound is reported as 0.
pub fn lipschitz_bound(delta: f64, a: f64, b: f64, dim: usize, d: usize) -> Result<f64> {
    if d > dim {
        return Err(Error::InvalidParameter(format!("d={d} exceeds D={dim}")));
    }
    if dim == d {
        return Ok(0.0);
    }
    let arg = 2.0 * (dim - d) as f64 * a / delta;
    if !(arg > 1.0) || !(delta > 0.0) || !(b >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Lipschitz bound needs 2(D-d)a/δ > 1 and b >= 0 (got argument {arg}, b={b})"
        )));
    }
    Ok(b * arg.ln().sqrt())
}

/// Worst-case contribution of the left-out axes, `L · (D - d)`.
pub fn lipschitz_gap(lipschitz: f64, dim: usize, d: usize) -> f64 {
    lipschitz * dim.saturating_sub(d) as f64
}

pub fn augmented_sigma(sigma: f64, lipschitz: f64, dim: usize, d: usize, beta: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::InvalidParameter(format!("beta must be > 0, got {beta}")));
    }
    Ok(sigma + lipschitz_gap(lipschitz, dim, d) / beta.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegretDiagnostics {
    pub lipschitz: f64,
    /// `L(D - d)/√β_t^d`, the amount added to the posterior deviation.
    pub sigma_gap: f64,
}

impl RegretDiagnostics {
    pub fn at(sched: &BetaSchedule, dim: usize, d: usize, t: usize) -> Result<Self> {
        let lipschitz = lipschitz_bound(sched.delta, sched.a, sched.b, dim, d)?;
        let beta = sched.beta(t, d)?;
        let sigma_gap = augmented_sigma(0.0, lipschitz, dim, d, beta)?;
        Ok(Self { lipschitz, sigma_gap })
    }
}

/// Instantaneous and cumulative regret over the post-initialization
/// iterations of `record`, measured against the optimum value `f_star`.
pub fn regret_curve(record: &RunRecord, f_star: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut inst = Vec::with_capacity(record.iterations());
    for &y in &record.values[record.n_init.min(record.len())..] {
        let r = match record.sense {
            Sense::Maximize => f_star - y,
            Sense::Minimize => y - f_star,
        };
        if r < 0.0 {
            return Err(Error::InconsistentOptimum { y, f_star });
        }
        inst.push(r);
    }
    let cumulative = inst
        .iter()
        .scan(0.0, |acc, r| {
            *acc += r;
            Some(*acc)
        })
        .collect();
    Ok((inst, cumulative))
}
