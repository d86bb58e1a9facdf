//! GP-UCB and expected-improvement acquisitions, and the exploration
//! schedule `β_t^d` used by the subspace UCB.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::gp::GpPosterior;

/// Parameters of the `β_t^d` exploration schedule.
///
/// `π_t` is fixed to `π² t² / 6`, which satisfies `Σ 1/π_t = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaSchedule {
    pub delta: f64,
    pub a: f64,
    pub b: f64,
    pub r: f64,
    /// Scales the whole schedule. The theoretical value over-explores in
    /// practice; 0.1 to 0.2 is a reasonable working range.
    pub multiplier: f64,
}

impl Default for BetaSchedule {
    fn default() -> Self {
        Self {
            delta: 0.1,
            a: 1.0,
            b: 1.0,
            r: 1.0,
            multiplier: 1.0,
        }
    }
}

impl BetaSchedule {
    pub fn with_multiplier(mut self, multiplier: f64) -> Self {
        self.multiplier = multiplier;
        self
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidParameter(format!("delta must lie in (0,1), got {}", self.delta)));
        }
        for (name, v) in [("a", self.a), ("b", self.b), ("r", self.r)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.multiplier >= 0.0 && self.multiplier.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "multiplier must be non-negative, got {}",
                self.multiplier
            )));
        }
        if d == 0 {
            return Err(Error::InvalidParameter("subspace dimension must be >= 1".into()));
        }
        if 4.0 * d as f64 * self.a / self.delta <= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "4·d·a/δ = {} must exceed 1",
                4.0 * d as f64 * self.a / self.delta
            )));
        }
        Ok(())
    }

    /// `multiplier · [2 log(4 π_t / δ) + 2 d log(d t² b r √log(4 d a / δ))]`.
    pub fn beta(&self, t: usize, d: usize) -> Result<f64> {
        if t == 0 {
            return Err(Error::InvalidParameter("beta schedule starts at t = 1".into()));
        }
        self.validate(d)?;
        let t = t as f64;
        let d = d as f64;
        let pi_t = PI * PI * t * t / 6.0;
        let inner = (4.0 * d * self.a / self.delta).ln().sqrt();
        let raw = 2.0 * (4.0 * pi_t / self.delta).ln() + 2.0 * d * (d * t * t * self.b * self.r * inner).ln();
        Ok(self.multiplier * raw)
    }
}

/// Free-function form of [`BetaSchedule::beta`].
pub fn beta_d(t: usize, d: usize, sched: &BetaSchedule) -> Result<f64> {
    sched.beta(t, d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AcquisitionKind {
    Ucb { beta: f64 },
    Ei { best: f64 },
}

impl AcquisitionKind {
    pub fn evaluate(&self, gp: &GpPosterior, x: &[f64]) -> Result<f64> {
        match *self {
            Self::Ucb { beta } => ucb_value(gp, x, beta),
            Self::Ei { best } => ei_value(gp, x, best),
        }
    }
}

pub fn ucb_from_moments(mean: f64, variance: f64, beta: f64) -> f64 {
    mean + beta.sqrt() * variance.sqrt()
}

pub fn ucb_value(gp: &GpPosterior, x: &[f64], beta: f64) -> Result<f64> {
    if !(beta >= 0.0) {
        return Err(Error::InvalidParameter(format!("beta must be >= 0, got {beta}")));
    }
    let (m, v) = gp.predict(x)?;
    Ok(ucb_from_moments(m, v, beta))
}

pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / SQRT_2)
}

/// Closed-form expected improvement over `best` for a Gaussian with the
/// given mean and standard deviation.
pub fn ei_from_moments(mean: f64, sigma: f64, best: f64) -> f64 {
    let gap = mean - best;
    if sigma <= 0.0 {
        return gap.max(0.0);
    }
    let z = gap / sigma;
    (gap * normal_cdf(z) + sigma * normal_pdf(z)).max(0.0)
}

pub fn ei_value(gp: &GpPosterior, x: &[f64], best: f64) -> Result<f64> {
    if !best.is_finite() {
        return Err(Error::InvalidParameter("incumbent must be finite".into()));
    }
    let (m, v) = gp.predict(x)?;
    Ok(ei_from_moments(m, v.sqrt(), best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gp::KernelParams;

    #[test]
    fn beta_matches_closed_form() {
        let s = BetaSchedule::default();
        let expected = 2.0 * (4.0 * PI * PI / 6.0 / 0.1f64).ln()
            + 10.0 * (5.0 * (200.0f64).ln().sqrt()).ln();
        let got = s.beta(1, 5).unwrap();
        assert!((got - expected).abs() < 1e-12);
        assert!((got - 32.80).abs() < 0.01);
    }

    #[test]
    fn beta_scales_linearly_with_multiplier() {
        let s = BetaSchedule::default();
        let full = s.beta(7, 3).unwrap();
        let scaled = s.with_multiplier(0.2).beta(7, 3).unwrap();
        assert!((scaled - 0.2 * full).abs() < 1e-12 * full);
    }

    #[test]
    fn beta_strictly_increasing() {
        let s = BetaSchedule::default();
        let mut prev = s.beta(1, 5).unwrap();
        for t in 2..=1000 {
            let b = s.beta(t, 5).unwrap();
            assert!(b > prev);
            prev = b;
        }
    }

    #[test]
    fn beta_rejects_degenerate_log_argument() {
        let s = BetaSchedule {
            delta: 0.9,
            a: 0.1,
            ..Default::default()
        };
        assert!(s.beta(1, 1).is_err());
        assert!(BetaSchedule::default().beta(0, 1).is_err());
        assert!(BetaSchedule { delta: 1.0, ..Default::default() }.beta(1, 1).is_err());
    }

    #[test]
    fn ucb_arithmetic() {
        assert!((ucb_from_moments(0.5, 0.04, 4.0) - 0.9).abs() < 1e-15);
        assert_eq!(ucb_from_moments(0.5, 0.04, 0.0), 0.5);
    }

    #[test]
    fn ucb_on_fitted_posterior() {
        let gp = GpPosterior::fit(&[vec![0.5]], &[2.0], KernelParams::default(), 1e-6).unwrap();
        let (m, _) = gp.predict(&[0.2]).unwrap();
        assert_eq!(ucb_value(&gp, &[0.2], 0.0).unwrap(), m);
        assert!((ucb_value(&gp, &[0.5], 9.0).unwrap() - 2.0).abs() < 1e-2);
        assert!(ucb_value(&gp, &[0.5], -1.0).is_err());
    }

    #[test]
    fn ei_edge_cases() {
        assert_eq!(ei_from_moments(0.0, 0.0, 1.0), 0.0);
        assert_eq!(ei_from_moments(1.0, 0.0, 1.0), 0.0);
        assert!((ei_from_moments(2.0, 1.0, 2.0) - 0.3989422804014327).abs() < 1e-12);
        assert!((ei_from_moments(3.0, 1e-12, 2.0) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ei_nonnegative_and_monotone_in_mean() {
        for &sigma in &[0.0, 0.01, 0.3, 1.0, 5.0] {
            let mut prev = 0.0;
            for i in -200..=200 {
                let mean = i as f64 * 0.05;
                let v = ei_from_moments(mean, sigma, 0.7);
                assert!(v >= 0.0);
                assert!(v >= prev - 1e-15, "sigma={sigma} mean={mean}");
                prev = v;
            }
        }
    }

    #[test]
    fn acquisition_kind_dispatch() {
        let gp = GpPosterior::fit(&[vec![0.5]], &[1.0], KernelParams::default(), 1e-6).unwrap();
        let ucb = AcquisitionKind::Ucb { beta: 1.0 }.evaluate(&gp, &[0.9]).unwrap();
        assert!((ucb - ucb_value(&gp, &[0.9], 1.0).unwrap()).abs() == 0.0);
        let ei = AcquisitionKind::Ei { best: 1.0 }.evaluate(&gp, &[0.9]).unwrap();
        assert!(ei > 0.0);
    }
}
