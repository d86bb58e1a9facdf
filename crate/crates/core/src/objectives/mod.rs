//! Benchmark objectives and the name registry the harness resolves them by.

mod cascade;
mod dataset;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

pub use cascade::{cascade_accuracy, synthetic_separable};
pub use dataset::{load_dataset, parse_dataset, DatasetTable, LabelSpec};

use crate::domain::BoxDomain;
use crate::error::{Error, Result};
use crate::record::Sense;

/// `N(x; μ₁, I) + ½ N(x; μ₂, I)`.
pub fn gaussian_mixture(x: &[f64], mu1: &[f64], mu2: &[f64]) -> Result<f64> {
    Error::check_dim(x.len(), mu1.len())?;
    Error::check_dim(x.len(), mu2.len())?;
    Ok(gaussian_mixture_unchecked(x, mu1, mu2))
}

fn gaussian_mixture_unchecked(x: &[f64], mu1: &[f64], mu2: &[f64]) -> f64 {
    let sq = |mu: &[f64]| x.iter().zip(mu).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
    let norm = (2.0 * PI).powf(-(x.len() as f64) / 2.0);
    norm * ((-0.5 * sq(mu1)).exp() + 0.5 * (-0.5 * sq(mu2)).exp())
}

/// `Σ_j (Σ_{i≤j} x_i)²`, computed with a running prefix sum.
pub fn schwefel12(x: &[f64]) -> f64 {
    x.iter()
        .scan(0.0, |prefix, v| {
            *prefix += v;
            Some(*prefix * *prefix)
        })
        .sum()
}

/// Maximizer of the mixture when both means are constant vectors. The
/// function factorizes into a term in the distance to the diagonal and a
/// one-dimensional profile along it, so the maximizer is `s·(1, …, 1)` for
/// the best `s`.
pub fn mixture_diagonal_optimum(dim: usize, mu1: f64, mu2: f64, lo: f64, hi: f64) -> (Vec<f64>, f64) {
    let profile = |s: f64| gaussian_mixture_unchecked(&vec![s; dim], &vec![mu1; dim], &vec![mu2; dim]);
    let n = 20_000;
    let step = (hi - lo) / n as f64;
    let mut best = (lo, profile(lo));
    for k in 1..=n {
        let s = lo + k as f64 * step;
        let v = profile(s);
        if v > best.1 {
            best = (s, v);
        }
    }
    // Golden-section refinement within one grid cell either side.
    let (mut a, mut b) = ((best.0 - step).max(lo), (best.0 + step).min(hi));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if profile(c) >= profile(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let s = 0.5 * (a + b);
    let v = profile(s);
    if v > best.1 {
        (vec![s; dim], v)
    } else {
        (vec![best.0; dim], best.1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveSpec {
    pub name: String,
    pub domain: BoxDomain,
    pub sense: Sense,
    pub known_optimum: Option<(Vec<f64>, f64)>,
}

impl ObjectiveSpec {
    pub fn dim(&self) -> usize {
        self.domain.dim()
    }
}

type ObjectiveFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A benchmark objective: its metadata plus a thread-safe evaluator in the
/// objective's own sense.
#[derive(Clone)]
pub struct Objective {
    spec: ObjectiveSpec,
    func: Arc<ObjectiveFn>,
}

impl fmt::Debug for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Objective").field("spec", &self.spec).finish_non_exhaustive()
    }
}

impl Objective {
    pub fn new<F>(spec: ObjectiveSpec, func: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            spec,
            func: Arc::new(func),
        }
    }

    pub fn spec(&self) -> &ObjectiveSpec {
        &self.spec
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        (self.func)(x)
    }

    /// Value in the maximization sense (negated for minimization problems).
    pub fn evaluate_max(&self, x: &[f64]) -> f64 {
        match self.spec.sense {
            Sense::Maximize => self.evaluate(x),
            Sense::Minimize => -self.evaluate(x),
        }
    }

    /// Mixture with means `mu1·1` and `mu2·1` on `[lo, hi]^dim`.
    pub fn gaussian_mixture(dim: usize, mu1: f64, mu2: f64, lo: f64, hi: f64) -> Result<Self> {
        let domain = BoxDomain::cube(dim, lo, hi)?;
        let m1 = vec![mu1; dim];
        let m2 = vec![mu2; dim];
        let spec = ObjectiveSpec {
            name: "gaussian-mixture".into(),
            domain,
            sense: Sense::Maximize,
            known_optimum: Some(mixture_diagonal_optimum(dim, mu1, mu2, lo, hi)),
        };
        Ok(Self::new(spec, move |x| gaussian_mixture_unchecked(x, &m1, &m2)))
    }

    /// Schwefel 1.2 on `[lo, hi]^dim`, minimized.
    pub fn schwefel12(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        let domain = BoxDomain::cube(dim, lo, hi)?;
        let origin = vec![0.0; dim];
        let known_optimum = domain.contains(&origin).then_some((origin, 0.0));
        let spec = ObjectiveSpec {
            name: "schwefel12".into(),
            domain,
            sense: Sense::Minimize,
            known_optimum,
        };
        Ok(Self::new(spec, schwefel12))
    }

    /// Training accuracy of a boosted stump cascade with one threshold per
    /// feature, over `[0, 1]^m`.
    pub fn cascade(data: DatasetTable) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Dataset {
                line: 0,
                message: "dataset has no rows".into(),
            });
        }
        let spec = ObjectiveSpec {
            name: "cascade".into(),
            domain: BoxDomain::unit(data.features()),
            sense: Sense::Maximize,
            known_optimum: None,
        };
        let data = Arc::new(data);
        Ok(Self::new(spec, move |x| cascade_accuracy(x, &data).unwrap_or(f64::NAN)))
    }
}

/// Registered objective names with a short description.
pub const OBJECTIVES: &[(&str, &str)] = &[
    ("gaussian-mixture", "bimodal mixture N(mu1, I) + 0.5 N(mu2, I); maximize; keys: mu1, mu2, lower, upper"),
    ("schwefel12", "Schwefel 1.2 sum of squared prefix sums; minimize; keys: lower, upper"),
    ("cascade", "boosted-stump training accuracy on a CSV dataset; maximize; keys: dataset, label_column, positive_label"),
    ("cascade-synthetic", "cascade accuracy on a generated separable dataset; keys: rows, data_seed"),
];

pub fn objective_names() -> String {
    OBJECTIVES.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
}
