use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// A point of the unit sphere with nonnegative, nondecreasing coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SortedSigma(Vec<f64>);

impl SortedSigma {
    /// Validates membership: entries `>= 0`, nondecreasing, `Σ σ_i² = 1` within `1e-12`.
    pub fn new(sigma: Vec<f64>) -> Result<Self> {
        let ok = sigma.iter().all(|s| *s >= 0.0 && s.is_finite())
            && sigma.windows(2).all(|w| w[0] <= w[1])
            && (sigma.iter().map(|s| s * s).sum::<f64>() - 1.0).abs() <= 1e-12;
        if !ok || sigma.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "{sigma:?} is not a sorted point of the nonnegative unit sphere"
            )));
        }
        Ok(SortedSigma(sigma))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Variances `σ_i²`.
    pub fn variances(&self) -> Vec<f64> {
        self.0.iter().map(|s| s * s).collect()
    }
}

/// Uniform draw from the sorted part of the nonnegative unit sphere:
/// normalize `n` standard normals, take absolute values, sort.
pub fn sample_sorted_sphere<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SortedSigma> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("sphere sampling needs n >= 2, got {n}")));
    }
    loop {
        let z: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let norm = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let mut sigma: Vec<f64> = z.iter().map(|v| v.abs() / norm).collect();
        sigma.sort_by(f64::total_cmp);
        return Ok(SortedSigma(sigma));
    }
}
