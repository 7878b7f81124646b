use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::tol;

/// Symmetric positive-semidefinite covariance matrix, stored row-major.
///
/// Input is symmetrized as `(A + Aᵀ) / 2` and rejected when its smallest
/// eigenvalue is below `-1e-8 (1 + trace)` or a variance is negative.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl CovarianceMatrix {
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCovariance("dimension must be positive".into()));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        if let Some(k) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidCovariance(format!(
                "entry ({}, {}) is not finite",
                k / n,
                k % n
            )));
        }
        let mut entries = entries;
        for i in 0..n {
            for j in i + 1..n {
                let avg = (entries[i * n + j] + entries[j * n + i]) / 2.0;
                entries[i * n + j] = avg;
                entries[j * n + i] = avg;
            }
        }
        let m = CovarianceMatrix { n, entries };
        if let Some(i) = (0..n).find(|&i| m.get(i, i) < 0.0) {
            return Err(Error::InvalidCovariance(format!(
                "variance of component {i} is negative ({})",
                m.get(i, i)
            )));
        }
        m.check_psd()?;
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: r.len(),
            });
        }
        Self::new(n, rows.concat())
    }

    /// Diagonal matrix of independent components with the given variances.
    pub fn diagonal(variances: &[f64]) -> Result<Self> {
        let n = variances.len();
        let mut entries = vec![0.0; n * n];
        for (i, v) in variances.iter().enumerate() {
            entries[i * n + i] = *v;
        }
        Self::new(n, entries)
    }

    /// Gram matrix `A Aᵀ` of an `n × n` standard-normal factor, scaled to unit trace.
    pub fn random_gram<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let a: Vec<f64> = (0..n * n).map(|_| rng.sample(StandardNormal)).collect();
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let dot: f64 = (0..n).map(|k| a[i * n + k] * a[j * n + k]).sum();
                entries[i * n + j] = dot;
                entries[j * n + i] = dot;
            }
        }
        let trace: f64 = (0..n).map(|i| entries[i * n + i]).sum();
        if trace > 0.0 {
            entries.iter_mut().for_each(|v| *v /= trace);
        }
        Self::new(n, entries)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn variances(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Variance of the sum of all components (sum of every entry).
    pub fn total_variance(&self) -> f64 {
        (0..self.n).map(|i| self.row(i).iter().sum::<f64>()).sum()
    }

    /// `alpha * Σ` for `alpha >= 0`.
    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale factor {alpha} must be >= 0")));
        }
        Ok(CovarianceMatrix {
            n: self.n,
            entries: self.entries.iter().map(|v| alpha * v).collect(),
        })
    }

    /// Smallest eigenvalue (symmetric eigendecomposition).
    pub fn min_eigenvalue(&self) -> f64 {
        let m = DMatrix::from_row_slice(self.n, self.n, &self.entries);
        m.symmetric_eigenvalues().min()
    }

    // Σ + δI is positive definite exactly when λ_min(Σ) > -δ, and a Cholesky
    // attempt is much cheaper than a full eigendecomposition.
    fn check_psd(&self) -> Result<()> {
        let tolerance = tol::PSD * (1.0 + self.trace());
        let shifted = DMatrix::from_row_slice(self.n, self.n, &self.entries)
            + DMatrix::from_diagonal(&DVector::from_element(self.n, tolerance));
        match shifted.cholesky() {
            Some(_) => Ok(()),
            None => Err(Error::NotPsd { tolerance }),
        }
    }
}

/// Expected returns `E[X_i]`, one per component.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanVector(Vec<f64>);

impl MeanVector {
    pub fn new(mu: Vec<f64>) -> Result<Self> {
        if let Some(i) = mu.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("mean of component {i} is not finite")));
        }
        Ok(MeanVector(mu))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Risk aversion `θ` of the mean-variance score `E[X] - θ Var[X]`.
///
/// `θ = 0` is accepted and reduces the score to the expectation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UtilityParams {
    theta: f64,
}

impl UtilityParams {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta >= 0.0 && theta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "theta must be a finite nonnegative number, got {theta}"
            )));
        }
        Ok(UtilityParams { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}
