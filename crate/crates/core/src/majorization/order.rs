use crate::error::{Error, Result};
use crate::tol;

/// Smallest slack `Σ_{i≥k} y_(i) - Σ_{i≥k} x_(i)` over `k = 2..=n`, where
/// `(·)_(i)` is the increasing rearrangement. These are the sums of the
/// `n-k+1` largest entries. Returns `+∞` when `n = 1` (no inequality).
pub fn majorization_slack(y: &[f64], x: &[f64]) -> Result<f64> {
    check_lengths(y, x)?;
    let (mut ys, mut xs) = (y.to_vec(), x.to_vec());
    ys.sort_by(f64::total_cmp);
    xs.sort_by(f64::total_cmp);
    let (mut tail_y, mut tail_x) = (0.0, 0.0);
    let mut slack = f64::INFINITY;
    for k in (1..ys.len()).rev() {
        tail_y += ys[k];
        tail_x += xs[k];
        slack = slack.min(tail_y - tail_x);
    }
    Ok(slack)
}

/// Whether `x ≺ y`: equal totals, and every top-`m` partial sum of `x` is at
/// most that of `y`. Tolerance `1e-12 * (1 + max |entry|)`.
pub fn majorizes(y: &[f64], x: &[f64]) -> Result<bool> {
    let slack = majorization_slack(y, x)?;
    let tolerance = tol::COALITION * tol::scale_of([y, x]);
    let sums_match = (y.iter().sum::<f64>() - x.iter().sum::<f64>()).abs() <= tolerance;
    Ok(sums_match && slack >= -tolerance)
}

fn check_lengths(y: &[f64], x: &[f64]) -> Result<()> {
    if y.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: y.len(),
            got: x.len(),
        });
    }
    if y.is_empty() {
        return Err(Error::InvalidParameter("majorization needs nonempty vectors".into()));
    }
    Ok(())
}
