//! Closed-form Shapley allocation of portfolio variance and of the
//! mean-variance utility score.
//!
//! `cargo run --example variance_allocation`

use std::fmt::Write;

use coalloc::variance::{
    utility_allocation, variance_shapley, CovarianceMatrix, MeanVector, UtilityParams,
};

pub fn run_example() -> coalloc::Result<String> {
    let mut report = String::new();

    // Two positions that hedge each other: the first one earns a negative share.
    let hedged = CovarianceMatrix::from_rows(&[vec![1.0, -2.0], vec![-2.0, 4.0]])?;
    let phi = variance_shapley(&hedged);
    writeln!(report, "hedged pair: {:?} (total variance {})", phi.as_slice(), hedged.total_variance()).unwrap();

    let book = CovarianceMatrix::from_rows(&[
        vec![0.040, 0.006, -0.012],
        vec![0.006, 0.090, 0.018],
        vec![-0.012, 0.018, 0.025],
    ])?;
    let mu = MeanVector::new(vec![0.06, 0.11, 0.04])?;
    for theta in [0.0, 1.0, 4.0] {
        let gamma = utility_allocation(&mu, &book, UtilityParams::new(theta)?)?;
        writeln!(report, "utility, theta = {theta}: {:?}", gamma.as_slice()).unwrap();
    }
    Ok(report)
}

fn main() -> coalloc::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
