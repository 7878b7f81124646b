//! Majorization between normalized Shapley allocations of the variance and
//! standard-deviation games, and a Monte-Carlo search for counterexamples to
//! `φ(λ)/λ(N) ≺ φ(ν)/ν(N)`.

mod conjecture;
mod order;
mod sphere;

pub use conjecture::{
    n2_margin, normalized_allocations, verify_conjecture_diagonal, verify_conjecture_general,
    ConjectureReport, Counterexample, NormalizedAllocations, MAX_DIAGONAL_PLAYERS,
    MAX_GENERAL_PLAYERS,
};
pub use order::{majorization_slack, majorizes};
pub use sphere::{sample_sorted_sphere, SortedSigma};
