//! Axis-aligned box domains and the affine map to the unit cube.
//!
//! Everything the surrogate sees lives in `[0, 1]^D`; objectives are always
//! evaluated in the original coordinates.

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BoxDomain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxDomain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        Error::check_dim(lower.len(), upper.len())?;
        if lower.is_empty() {
            return Err(Error::InvalidParameter("box must have at least one dimension".into()));
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidParameter(format!(
                    "bad interval on dimension {i}: [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn unit(dim: usize) -> Self {
        Self::cube(dim, 0.0, 1.0).expect("unit cube is valid")
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *v >= *lo && *v <= *hi)
    }

    /// Affine map of coordinate `i` into `[0, 1]`.
    pub fn coord_to_unit(&self, i: usize, v: f64) -> f64 {
        (v - self.lower[i]) / self.width(i)
    }

    /// Inverse of [`coord_to_unit`](Self::coord_to_unit), clamped to the interval.
    pub fn coord_from_unit(&self, i: usize, u: f64) -> f64 {
        (self.lower[i] + u * self.width(i)).clamp(self.lower[i], self.upper[i])
    }

    pub fn to_unit(&self, x: &[f64]) -> Vec<f64> {
        x.iter().enumerate().map(|(i, v)| self.coord_to_unit(i, *v)).collect()
    }

    pub fn from_unit(&self, u: &[f64]) -> Vec<f64> {
        u.iter().enumerate().map(|(i, v)| self.coord_from_unit(i, *v)).collect()
    }

    /// Sub-box over the given axes, in the given order.
    pub fn restrict(&self, axes: &[usize]) -> Result<Self> {
        Self::new(
            axes.iter().map(|&i| self.lower[i]).collect(),
            axes.iter().map(|&i| self.upper[i]).collect(),
        )
    }

    /// One uniform draw per coordinate, in axis order.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        (0..self.dim()).map(|i| self.coord_from_unit(i, rng.random::<f64>())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_inverted_and_mismatched_bounds() {
        assert!(BoxDomain::new(vec![0.0], vec![0.0]).is_err());
        assert!(BoxDomain::new(vec![1.0], vec![0.0]).is_err());
        assert!(BoxDomain::new(vec![0.0, 0.0], vec![1.0]).is_err());
        assert!(BoxDomain::new(vec![], vec![]).is_err());
    }

    #[test]
    fn unit_map_hits_endpoints() {
        let b = BoxDomain::cube(2, 1.0, 4.0).unwrap();
        assert_eq!(b.to_unit(&[1.0, 4.0]), vec![0.0, 1.0]);
        assert_eq!(b.from_unit(&[0.0, 1.0]), vec![1.0, 4.0]);
        assert_eq!(b.from_unit(&[0.5, 0.5]), vec![2.5, 2.5]);
    }
}
