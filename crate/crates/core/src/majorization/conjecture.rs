use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{majorization_slack, sample_sorted_sphere};
use crate::error::{Error, Result};
use crate::rng::{chunk_ranges, stream_rng};
use crate::tol;
use crate::variance::{sd_shapley, variance_shapley, CovarianceMatrix};

/// Each diagonal sample costs one exponential standard-deviation Shapley value.
pub const MAX_DIAGONAL_PLAYERS: usize = 12;
pub const MAX_GENERAL_PLAYERS: usize = 10;

/// General-mode draws with total variance at or below this are skipped.
const DEGENERATE_TOTAL: f64 = 1e-10;

/// Shapley allocations of the variance and standard-deviation games, each
/// divided by its grand-coalition value so both sum to one.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedAllocations {
    pub variance: Vec<f64>,
    pub sd: Vec<f64>,
}

impl NormalizedAllocations {
    /// Majorization slack of `sd ≺ variance`; negative means the relation fails.
    pub fn margin(&self) -> f64 {
        majorization_slack(&self.variance, &self.sd).expect("equal lengths by construction")
    }
}

pub fn normalized_allocations(cov: &CovarianceMatrix) -> Result<NormalizedAllocations> {
    let total = cov.total_variance();
    if total <= tol::COALITION * (1.0 + cov.trace()) {
        return Err(Error::DegenerateVariance { variance: total });
    }
    let sd_total = total.sqrt();
    let variance = variance_shapley(cov).as_slice().iter().map(|v| v / total).collect();
    let sd = sd_shapley(cov)?.as_slice().iter().map(|v| v / sd_total).collect();
    Ok(NormalizedAllocations { variance, sd })
}

/// `(σ₁ - σ₂) sqrt(σ₁² + σ₂² + 2ρσ₁σ₂) + σ₂² + ρσ₁σ₂` for `0 <= σ₁ <= σ₂`,
/// `ρ ∈ [-1, 1]`. Nonnegative on that domain and nondecreasing in `ρ`; the
/// two-asset case of the majorization relation rests on it.
pub fn n2_margin(sigma1: f64, sigma2: f64, rho: f64) -> Result<f64> {
    let valid = sigma1.is_finite()
        && sigma2.is_finite()
        && 0.0 <= sigma1
        && sigma1 <= sigma2
        && (-1.0..=1.0).contains(&rho);
    if !valid {
        return Err(Error::InvalidParameter(format!(
            "n2_margin needs 0 <= sigma1 <= sigma2 and -1 <= rho <= 1, got ({sigma1}, {sigma2}, {rho})"
        )));
    }
    let cross = rho * sigma1 * sigma2;
    let total = (sigma1 * sigma1 + sigma2 * sigma2 + 2.0 * cross).max(0.0).sqrt();
    Ok((sigma1 - sigma2) * total + sigma2 * sigma2 + cross)
}

/// A covariance matrix for which the sampled relation failed.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub sample: u64,
    pub margin: f64,
    pub covariance: CovarianceMatrix,
}

/// Outcome of a verification run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub mode: &'static str,
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub violations: u64,
    /// Most negative majorization slack seen; `+∞` (JSON `null`) for an empty run.
    #[serde(serialize_with = "finite_or_null")]
    pub worst_margin: f64,
    /// Passing samples whose slack fell in `[-1e-9, 0)`.
    pub near_misses: u64,
    pub skipped_degenerate: u64,
    pub elapsed_seconds: f64,
    #[serde(skip)]
    pub counterexamples: Vec<Counterexample>,
}

impl ConjectureReport {
    /// Copy with the timing field zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        ConjectureReport {
            elapsed_seconds: 0.0,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn finite_or_null<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

/// Samples diagonal covariance matrices `diag(σ²)` with `σ` uniform on the sorted
/// nonnegative unit sphere and checks the majorization relation for each.
pub fn verify_conjecture_diagonal(n: usize, samples: u64, seed: u64) -> Result<ConjectureReport> {
    check_players(n, MAX_DIAGONAL_PLAYERS, "diagonal conjecture verifier")?;
    run("diagonal", n, samples, seed, |rng| {
        let sigma = sample_sorted_sphere(n, rng)?;
        CovarianceMatrix::diagonal(&sigma.variances()).map(Some)
    })
}

/// Samples unit-trace Gram matrices of Gaussian factors; draws with total
/// variance at most `1e-10` are skipped and counted.
pub fn verify_conjecture_general(n: usize, samples: u64, seed: u64) -> Result<ConjectureReport> {
    check_players(n, MAX_GENERAL_PLAYERS, "general conjecture verifier")?;
    run("general", n, samples, seed, |rng| {
        let cov = CovarianceMatrix::random_gram(n, rng)?;
        Ok((cov.total_variance() > DEGENERATE_TOTAL).then_some(cov))
    })
}

fn check_players(n: usize, limit: usize, guard: &'static str) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("{guard} needs n >= 2, got {n}")));
    }
    if n > limit {
        return Err(Error::guard(guard, limit, n));
    }
    Ok(())
}

#[derive(Default)]
struct Tally {
    violations: u64,
    near_misses: u64,
    skipped: u64,
    worst: f64,
    counterexamples: Vec<Counterexample>,
}

fn run<F>(mode: &'static str, n: usize, samples: u64, seed: u64, draw: F) -> Result<ConjectureReport>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> Result<Option<CovarianceMatrix>> + Sync,
{
    let start = Instant::now();
    let tallies: Vec<Tally> = chunk_ranges(samples)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|range| -> Result<Tally> {
            let mut t = Tally {
                worst: f64::INFINITY,
                ..Tally::default()
            };
            for k in range {
                let mut rng = stream_rng(seed, k);
                let Some(cov) = draw(&mut rng)? else {
                    t.skipped += 1;
                    continue;
                };
                let margin = match normalized_allocations(&cov) {
                    Ok(norm) => norm.margin(),
                    Err(Error::DegenerateVariance { .. }) => {
                        t.skipped += 1;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                t.worst = t.worst.min(margin);
                if margin < -tol::VIOLATION {
                    t.violations += 1;
                    t.counterexamples.push(Counterexample {
                        sample: k,
                        margin,
                        covariance: cov,
                    });
                } else if margin < 0.0 {
                    t.near_misses += 1;
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;

    let mut report = ConjectureReport {
        mode,
        n,
        samples,
        seed,
        violations: 0,
        worst_margin: f64::INFINITY,
        near_misses: 0,
        skipped_degenerate: 0,
        elapsed_seconds: 0.0,
        counterexamples: Vec::new(),
    };
    for t in tallies {
        report.violations += t.violations;
        report.near_misses += t.near_misses;
        report.skipped_degenerate += t.skipped;
        report.worst_margin = report.worst_margin.min(t.worst);
        report.counterexamples.extend(t.counterexamples);
    }
    report.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margin_examples() {
        assert_eq!(n2_margin(1.0, 1.0, -1.0).unwrap(), 0.0);
        assert_eq!(n2_margin(1.0, 2.0, -1.0).unwrap(), 1.0);
        assert_eq!(n2_margin(0.0, 3.0, 0.4).unwrap(), 0.0);
        assert!(n2_margin(2.0, 1.0, 0.0).is_err());
        assert!(n2_margin(1.0, 2.0, 1.5).is_err());
        assert!(n2_margin(-1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn normalized_diag_149() {
        let cov = CovarianceMatrix::diagonal(&[1.0, 4.0, 9.0]).unwrap();
        let norm = normalized_allocations(&cov).unwrap();
        let want = [1.0 / 14.0, 4.0 / 14.0, 9.0 / 14.0];
        for (a, b) in norm.variance.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((norm.sd.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(norm.margin() >= 0.0);
    }

    #[test]
    fn normalized_equal_pair() {
        let norm = normalized_allocations(&CovarianceMatrix::diagonal(&[2.0, 2.0]).unwrap()).unwrap();
        assert_eq!(norm.variance, vec![0.5, 0.5]);
        for s in &norm.sd {
            assert!((s - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn negatively_correlated_pair_majorizes() {
        let cov = CovarianceMatrix::new(2, vec![1.0, -0.5, -0.5, 1.0]).unwrap();
        let norm = normalized_allocations(&cov).unwrap();
        assert!(super::super::majorizes(&norm.variance, &norm.sd).unwrap());
    }

    #[test]
    fn degenerate_total_signalled() {
        let cov = CovarianceMatrix::new(2, vec![1.0, -1.0, -1.0, 1.0]).unwrap();
        assert!(matches!(normalized_allocations(&cov), Err(Error::DegenerateVariance { .. })));
    }

    #[test]
    fn empty_run() {
        let r = verify_conjecture_diagonal(3, 0, 1).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!(r.worst_margin, f64::INFINITY);
        assert!(r.to_json().unwrap().contains("\"worst_margin\": null"));
    }

    #[test]
    fn guards() {
        assert!(matches!(verify_conjecture_diagonal(13, 1, 0), Err(Error::Guard { .. })));
        assert!(matches!(verify_conjecture_general(11, 1, 0), Err(Error::Guard { .. })));
        assert!(verify_conjecture_diagonal(1, 1, 0).is_err());
    }

    #[test]
    fn small_runs_pass() {
        let r = verify_conjecture_diagonal(3, 2_000, 7).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.worst_margin > -1e-9);
        let r = verify_conjecture_general(2, 2_000, 7).unwrap();
        assert_eq!(r.violations, 0);
    }
}
