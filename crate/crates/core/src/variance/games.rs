use rayon::prelude::*;

use super::{CovarianceMatrix, MeanVector, UtilityParams};
use crate::error::{Error, Result};
use crate::game::{shapley_exact, Allocation, TabularGame, MAX_TABULAR_PLAYERS};
use crate::tol;

/// Below this many entries a doubling block is filled on the calling thread.
const PARALLEL_BLOCK: usize = 1 << 14;

/// The variance game `v(J) = Var[Σ_{i∈J} X_i] = Σ_{i,j∈J} Σ_ij`.
///
/// Filled by doubling: coalitions whose highest player is `h` are
/// `K ∪ {h}` with `K < 2^h`, and
/// `v(K ∪ {h}) = v(K) + Σ_hh + 2 Σ_{j∈K} Σ_hj`.
/// Every entry is a fixed expression of earlier entries, so the table is
/// identical however the blocks are scheduled.
pub fn variance_game(cov: &CovarianceMatrix) -> Result<TabularGame> {
    let n = cov.n();
    if n > MAX_TABULAR_PLAYERS {
        return Err(Error::guard("tabular game size", MAX_TABULAR_PLAYERS, n));
    }
    let mut values = vec![0.0; 1 << n];
    for h in 0..n {
        let (lower, upper) = values.split_at_mut(1 << h);
        let upper = &mut upper[..1 << h];
        let row = cov.row(h);
        let var = row[h];
        let fill = |offset: usize, block: &mut [f64]| {
            for (k, slot) in block.iter_mut().enumerate() {
                let members = offset + k;
                let mut cross = 0.0;
                let mut rest = members;
                while rest != 0 {
                    cross += row[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                *slot = lower[members] + var + 2.0 * cross;
            }
        };
        if upper.len() <= PARALLEL_BLOCK {
            fill(0, upper);
        } else {
            upper
                .par_chunks_mut(PARALLEL_BLOCK)
                .enumerate()
                .for_each(|(c, block)| fill(c * PARALLEL_BLOCK, block));
        }
    }
    TabularGame::new(n, values)
}

/// Shapley value of the variance game: `φ_i = Cov[X_i, S_N] = Σ_j Σ_ij`.
///
/// Quadratic in `n`, no size limit. Row sums are compensated, so hedged
/// positions whose covariances cancel get shares accurate to a few ulps of the
/// largest entry rather than of the running sum.
pub fn variance_shapley(cov: &CovarianceMatrix) -> Allocation {
    Allocation::new((0..cov.n()).map(|i| compensated_sum(cov.row(i))).collect())
}

/// Neumaier's compensated sum.
fn compensated_sum(xs: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for &x in xs {
        let t = sum + x;
        carry += if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
        sum = t;
    }
    sum + carry
}

/// The standard-deviation game `λ(J) = sqrt(Var[S_J])`.
///
/// Coalition variances in `[-1e-12 scale, 0)` are rounding noise and clamped to
/// zero; anything more negative is rejected.
pub fn sd_game(cov: &CovarianceMatrix) -> Result<TabularGame> {
    let variance = variance_game(cov)?;
    let n = variance.n();
    let floor = -tol::COALITION * variance.scale();
    if let Some(bits) = variance.values().iter().position(|&v| v < floor) {
        return Err(Error::InvalidCovariance(format!(
            "coalition {bits:#b} has negative variance {}",
            variance[bits]
        )));
    }
    let values = variance
        .into_values()
        .into_iter()
        .map(|v| v.max(0.0).sqrt())
        .collect();
    TabularGame::new(n, values)
}

/// Exact Shapley value of the standard-deviation game (exponential in `n`).
pub fn sd_shapley(cov: &CovarianceMatrix) -> Result<Allocation> {
    Ok(shapley_exact(&sd_game(cov)?))
}

/// The mean-variance game `γ(J) = E[S_J] - θ Var[S_J]` in tabular form.
pub fn utility_game(mu: &MeanVector, cov: &CovarianceMatrix, params: UtilityParams) -> Result<TabularGame> {
    check_dims(mu, cov)?;
    let variance = variance_game(cov)?;
    let expectation = TabularGame::additive(mu.as_slice())?;
    expectation.combine(1.0, &variance, -params.theta())
}

/// Shapley value of the mean-variance game: `φ_i = E[X_i] - θ Cov[X_i, S_N]`.
pub fn utility_allocation(mu: &MeanVector, cov: &CovarianceMatrix, params: UtilityParams) -> Result<Allocation> {
    check_dims(mu, cov)?;
    let risk = variance_shapley(cov);
    Ok(Allocation::new(
        mu.as_slice()
            .iter()
            .zip(risk.as_slice())
            .map(|(m, r)| m - params.theta() * r)
            .collect(),
    ))
}

fn check_dims(mu: &MeanVector, cov: &CovarianceMatrix) -> Result<()> {
    if mu.len() != cov.n() {
        return Err(Error::DimensionMismatch {
            expected: cov.n(),
            got: mu.len(),
        });
    }
    Ok(())
}
