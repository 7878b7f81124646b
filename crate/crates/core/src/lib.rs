//! Shapley-value allocation of risk across the components of a portfolio.
//!
//! A covariance matrix `Σ` of component returns defines three cooperative
//! games on the components: the variance game `Var[S_J]`, the
//! standard-deviation game `sqrt(Var[S_J])` and the mean-variance utility
//! game `E[S_J] - θ Var[S_J]`, where `S_J` is the sum over a coalition `J`.
//!
//! * [`game`]: tabular games, exact and sampled Shapley values, core and
//!   anticore, modularity, fusion, dummies and symmetric pairs.
//! * [`variance`]: covariance-driven games, the quadratic closed form
//!   `φ_i = Cov[X_i, S_N]`, and the issue decomposition.
//! * [`majorization`]: normalized variance vs. standard-deviation allocations
//!   and a Monte-Carlo verifier for their majorization ordering.
//! * [`io`]: returns/covariance/mean CSV input and allocation output.
//! * [`cli`]: the `coalloc` command line.
//!
//! ```
//! use coalloc::variance::{variance_shapley, CovarianceMatrix};
//!
//! let cov = CovarianceMatrix::from_rows(&[vec![1.0, -2.0], vec![-2.0, 4.0]]).unwrap();
//! assert_eq!(variance_shapley(&cov).as_slice(), &[-1.0, 2.0]);
//! ```

pub mod cli;
pub mod coalition;
pub mod error;
pub mod game;
pub mod io;
pub mod majorization;
pub mod rng;
pub mod tol;
pub mod variance;

pub use coalition::Coalition;
pub use error::{Error, Result};
pub use game::{Allocation, TabularGame};
pub use variance::CovarianceMatrix;
