//! Numerical tolerances shared by the solvers and diagnostics.
//!
//! Game-level tolerances are relative to `scale = 1 + max |v(J)|` so that games
//! built from covariance data of any magnitude are judged alike.

/// Efficiency comparisons (`Σ φ_i = v(N)`) and fusion-property comparisons.
pub const EFFICIENCY: f64 = 1e-9;

/// Per-coalition comparisons: core inequalities, modularity increments,
/// dummy and symmetry detection.
pub const COALITION: f64 = 1e-12;

/// Positive-semidefiniteness: smallest eigenvalue must be `>= -PSD * (1 + trace)`.
pub const PSD: f64 = 1e-8;

/// Majorization slack below which a sample counts as a conjecture violation.
pub const VIOLATION: f64 = 1e-9;

/// `1 + max |x|` over every slice given.
pub fn scale_of<'a>(slices: impl IntoIterator<Item = &'a [f64]>) -> f64 {
    1.0 + slices
        .into_iter()
        .flat_map(|s| s.iter())
        .fold(0.0_f64, |m, v| m.max(v.abs()))
}
