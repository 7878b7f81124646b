//! Games generated by a covariance matrix: the variance game, the
//! standard-deviation game and the mean-variance utility game.
//!
//! The variance game's Shapley value is the row sum of the covariance matrix
//! (each risk's covariance with the total), which [`variance_shapley`] returns
//! in `O(n^2)`. The same number falls out of [`decomposed_shapley`] applied to
//! the issue decomposition of the game, and of the exponential
//! [`shapley_exact`](crate::game::shapley_exact) on the tabulated game.

mod covariance;
mod decomposed;
mod games;

pub use covariance::{CovarianceMatrix, MeanVector, UtilityParams};
pub use decomposed::{decompose_variance_game, decomposed_shapley, DecomposedGame, Issue, IssueScope};
pub use games::{
    sd_game, sd_shapley, utility_allocation, utility_game, variance_game, variance_shapley,
};
