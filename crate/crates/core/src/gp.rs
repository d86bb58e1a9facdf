//! Squared-exponential kernel and exact Gaussian-process posterior.
//!
//! The posterior is computed from a lower-triangular factor of
//! `K + (noise + jitter) I`; the jitter starts at `1e-10` and grows by a
//! factor of ten until the factorization succeeds or `1e-4` is exceeded.

use crate::error::{Error, Result};

const JITTER_START: f64 = 1e-10;
const JITTER_MAX: f64 = 1e-4;
/// Most negative raw variance that is still treated as round-off.
const VARIANCE_CLAMP_FLOOR: f64 = -1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    pub lengthscale: f64,
    pub signal_variance: f64,
}

impl Default for KernelParams {
    fn default() -> Self {
        Self {
            lengthscale: 0.1,
            signal_variance: 1.0,
        }
    }
}

impl KernelParams {
    pub fn new(lengthscale: f64, signal_variance: f64) -> Result<Self> {
        let p = Self {
            lengthscale,
            signal_variance,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lengthscale > 0.0 && self.lengthscale.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lengthscale must be positive, got {}",
                self.lengthscale
            )));
        }
        if !(self.signal_variance > 0.0 && self.signal_variance.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "signal variance must be positive, got {}",
                self.signal_variance
            )));
        }
        Ok(())
    }

    #[inline]
    fn eval_unchecked(&self, x: &[f64], x2: &[f64]) -> f64 {
        let sq: f64 = x.iter().zip(x2).map(|(a, b)| (a - b) * (a - b)).sum();
        self.signal_variance * (-sq / (2.0 * self.lengthscale * self.lengthscale)).exp()
    }
}

/// `σ_f² · exp(−‖x − x2‖² / 2ℓ²)`.
pub fn se_kernel(x: &[f64], x2: &[f64], params: &KernelParams) -> Result<f64> {
    Error::check_dim(x.len(), x2.len())?;
    Ok(params.eval_unchecked(x, x2))
}

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

pub fn gram_matrix(points: &[Vec<f64>], params: &KernelParams) -> Result<Matrix> {
    let first = points.first().ok_or(Error::EmptyTrainingSet)?;
    let dim = first.len();
    for p in points {
        Error::check_dim(dim, p.len())?;
    }
    let n = points.len();
    let mut k = Matrix::zeros(n);
    for i in 0..n {
        k.set(i, i, params.signal_variance);
        for j in 0..i {
            let v = params.eval_unchecked(&points[i], &points[j]);
            k.set(i, j, v);
            k.set(j, i, v);
        }
    }
    Ok(k)
}

/// Dot product with four independent accumulators so the loop vectorizes.
#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len());
    let (a, b) = (&a[..n], &b[..n]);
    let mut acc = [0.0f64; 4];
    let chunks = n / 4;
    for c in 0..chunks {
        let i = 4 * c;
        acc[0] += a[i] * b[i];
        acc[1] += a[i + 1] * b[i + 1];
        acc[2] += a[i + 2] * b[i + 2];
        acc[3] += a[i + 3] * b[i + 3];
    }
    let mut tail = 0.0;
    for i in 4 * chunks..n {
        tail += a[i] * b[i];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// In-place lower Cholesky factor of `a + shift·I`. Returns `None` when a
/// pivot is not strictly positive.
fn cholesky_shifted(a: &Matrix, shift: f64) -> Option<Matrix> {
    let n = a.size();
    let mut l = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let dot = dot(&l.row(i)[..j], &l.row(j)[..j]);
            if i == j {
                let d = a.get(i, i) + shift - dot;
                if !(d > 0.0 && d.is_finite()) {
                    return None;
                }
                l.set(i, i, d.sqrt());
            } else {
                l.set(i, j, (a.get(i, j) - dot) / l.get(j, j));
            }
        }
    }
    Some(l)
}

/// Solves `L v = b` for lower-triangular `L`, overwriting `b`.
#[inline]
fn forward_substitute(l: &Matrix, b: &mut [f64]) {
    for i in 0..b.len() {
        let dot = dot(&l.row(i)[..i], &b[..i]);
        b[i] = (b[i] - dot) / l.get(i, i);
    }
}

/// Solves `Lᵀ v = b`, overwriting `b`.
fn backward_substitute(l: &Matrix, b: &mut [f64]) {
    let n = b.len();
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in i + 1..n {
            s -= l.get(j, i) * b[j];
        }
        b[i] = s / l.get(i, i);
    }
}

/// Fitted GP over a fixed training set. Immutable; safe to share across
/// threads for read-only prediction.
#[derive(Debug, Clone)]
pub struct GpPosterior {
    dim: usize,
    inputs: Vec<f64>,
    targets: Vec<f64>,
    params: KernelParams,
    noise: f64,
    jitter: f64,
    chol: Matrix,
    alpha: Vec<f64>,
}

impl GpPosterior {
    pub fn fit(
        inputs: &[Vec<f64>],
        targets: &[f64],
        params: KernelParams,
        noise: f64,
    ) -> Result<Self> {
        params.validate()?;
        if inputs.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        if inputs.len() != targets.len() {
            return Err(Error::LengthMismatch(format!(
                "{} inputs but {} targets",
                inputs.len(),
                targets.len()
            )));
        }
        if !(noise >= 0.0 && noise.is_finite()) {
            return Err(Error::InvalidParameter(format!("noise must be >= 0, got {noise}")));
        }
        if targets.iter().any(|y| !y.is_finite()) {
            return Err(Error::InvalidParameter("non-finite training target".into()));
        }
        let k = gram_matrix(inputs, &params)?;

        let mut jitter = JITTER_START;
        let chol = loop {
            if let Some(l) = cholesky_shifted(&k, noise + jitter) {
                break l;
            }
            jitter *= 10.0;
            if jitter > JITTER_MAX * (1.0 + 1e-9) {
                return Err(Error::IllConditioned {
                    max_jitter: JITTER_MAX,
                });
            }
        };

        let mut alpha = targets.to_vec();
        forward_substitute(&chol, &mut alpha);
        backward_substitute(&chol, &mut alpha);

        Ok(Self {
            dim: inputs[0].len(),
            inputs: inputs.iter().flatten().copied().collect(),
            targets: targets.to_vec(),
            params,
            noise,
            jitter,
            chol,
            alpha,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn params(&self) -> &KernelParams {
        &self.params
    }

    pub fn noise(&self) -> f64 {
        self.noise
    }

    /// Jitter that was added on top of the noise to make the factorization succeed.
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    /// Diagonal term actually factorized: `noise + jitter`.
    pub fn effective_noise(&self) -> f64 {
        self.noise + self.jitter
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn input(&self, i: usize) -> &[f64] {
        &self.inputs[i * self.dim..(i + 1) * self.dim]
    }

    /// Lower-triangular factor of `K + effective_noise · I`.
    pub fn factor(&self) -> &Matrix {
        &self.chol
    }

    /// Predictive mean and variance at `x`.
    pub fn predict(&self, x: &[f64]) -> Result<(f64, f64)> {
        Error::check_dim(self.dim, x.len())?;
        let mut k: Vec<f64> = self
            .inputs
            .chunks_exact(self.dim)
            .map(|xi| self.params.eval_unchecked(x, xi))
            .collect();
        let mean = dot(&k, &self.alpha);
        forward_substitute(&self.chol, &mut k);
        let reduction = dot(&k, &k);
        let var = self.params.signal_variance - reduction;
        if var >= 0.0 {
            Ok((mean, var))
        } else if var > VARIANCE_CLAMP_FLOOR {
            Ok((mean, 0.0))
        } else {
            Err(Error::NegativeVariance(var))
        }
    }
}

/// Free-function form of [`GpPosterior::predict`].
pub fn posterior_mean_var(gp: &GpPosterior, x: &[f64]) -> Result<(f64, f64)> {
    gp.predict(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> KernelParams {
        KernelParams::new(0.1, 1.0).unwrap()
    }

    #[test]
    fn kernel_closed_form_values() {
        let p = unit();
        assert_eq!(se_kernel(&[0.3, 0.7], &[0.3, 0.7], &p).unwrap(), 1.0);
        assert!((se_kernel(&[0.0], &[0.1], &p).unwrap() - 0.6065306597126334).abs() < 1e-12);
        assert!((se_kernel(&[0.0, 0.0], &[0.1, 0.1], &p).unwrap() - 0.36787944117144233).abs() < 1e-12);
    }

    #[test]
    fn kernel_rejects_dimension_mismatch() {
        assert!(matches!(
            se_kernel(&[0.0], &[0.0, 1.0], &unit()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_is_exactly_symmetric() {
        let p = KernelParams::new(0.37, 2.5).unwrap();
        let a = [0.12, 0.9, 0.33];
        let b = [0.5, 0.01, 0.77];
        assert_eq!(se_kernel(&a, &b, &p).unwrap(), se_kernel(&b, &a, &p).unwrap());
    }

    #[test]
    fn gram_of_single_and_duplicate_points() {
        let p = KernelParams::new(0.1, 2.0).unwrap();
        let g = gram_matrix(&[vec![0.4]], &p).unwrap();
        assert_eq!(g.size(), 1);
        assert_eq!(g.get(0, 0), 2.0);

        let g = gram_matrix(&[vec![0.4, 0.1], vec![0.4, 0.1]], &p).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(g.get(i, j), 2.0);
            }
        }
    }

    #[test]
    fn gram_rejects_ragged_points() {
        assert!(gram_matrix(&[vec![0.0], vec![0.0, 1.0]], &unit()).is_err());
        assert!(matches!(gram_matrix(&[], &unit()), Err(Error::EmptyTrainingSet)));
    }

    #[test]
    fn single_observation_interpolates() {
        let gp = GpPosterior::fit(&[vec![0.3, 0.6]], &[3.0], unit(), 0.0).unwrap();
        let (m, v) = gp.predict(&[0.3, 0.6]).unwrap();
        assert!((m - 3.0).abs() < 1e-6);
        assert!(v < 1e-6);
    }

    #[test]
    fn well_separated_points_do_not_interact() {
        let gp = GpPosterior::fit(&[vec![0.0], vec![1.0]], &[1.0, -1.0], unit(), 1e-6).unwrap();
        let (m0, _) = gp.predict(&[0.0]).unwrap();
        let (m1, _) = gp.predict(&[1.0]).unwrap();
        assert!((m0 - 1.0).abs() < 1e-5, "{m0}");
        assert!((m1 + 1.0).abs() < 1e-5, "{m1}");
    }

    #[test]
    fn duplicate_inputs_without_noise_factorize() {
        let gp = GpPosterior::fit(&[vec![0.5], vec![0.5], vec![0.5]], &[1.0, 1.0, 1.0], unit(), 0.0).unwrap();
        assert!(gp.jitter() >= JITTER_START);
        let (m, v) = gp.predict(&[0.5]).unwrap();
        assert!((m - 1.0).abs() < 1e-6);
        assert!(v >= 0.0 && v < 1e-6);
    }

    #[test]
    fn fit_error_paths() {
        assert!(matches!(GpPosterior::fit(&[], &[], unit(), 0.0), Err(Error::EmptyTrainingSet)));
        assert!(GpPosterior::fit(&[vec![0.0]], &[1.0, 2.0], unit(), 0.0).is_err());
        assert!(GpPosterior::fit(&[vec![0.0]], &[1.0], unit(), -1.0).is_err());
        let gp = GpPosterior::fit(&[vec![0.0]], &[1.0], unit(), 0.0).unwrap();
        assert!(matches!(gp.predict(&[0.0, 0.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn factor_reproduces_shifted_gram() {
        let pts: Vec<Vec<f64>> = (0..12).map(|i| vec![i as f64 / 11.0, (i * 7 % 12) as f64 / 11.0]).collect();
        let y: Vec<f64> = (0..12).map(|i| (i as f64).sin()).collect();
        let p = KernelParams::new(0.3, 1.0).unwrap();
        let gp = GpPosterior::fit(&pts, &y, p, 1e-6).unwrap();
        let k = gram_matrix(&pts, &p).unwrap();
        let l = gp.factor();
        for i in 0..12 {
            for j in 0..12 {
                let llt: f64 = (0..12).map(|c| l.get(i, c) * l.get(j, c)).sum();
                let target = k.get(i, j) + if i == j { gp.effective_noise() } else { 0.0 };
                assert!((llt - target).abs() <= 1e-8 * target.abs().max(1.0));
            }
        }
    }
}
