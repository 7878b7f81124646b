//! Monte-Carlo Shapley estimates by permutation sampling, compared with the
//! exact value.
//!
//! `cargo run --release --example sampled_shapley`

use std::fmt::Write;

use coalloc::game::{shapley_exact, shapley_sampled_with_error, PermutationSampleConfig};
use coalloc::variance::{sd_game, CovarianceMatrix};
use coalloc::rng::stream_rng;

pub fn run_example() -> coalloc::Result<String> {
    let mut report = String::new();
    let cov = CovarianceMatrix::random_gram(10, &mut stream_rng(5, 0))?;
    let game = sd_game(&cov)?;
    let exact = shapley_exact(&game);
    for samples in [1_000, 10_000, 100_000] {
        let est = shapley_sampled_with_error(&game, PermutationSampleConfig::new(samples, 42)?);
        let worst_se = est.std_error.iter().cloned().fold(0.0, f64::max);
        writeln!(
            report,
            "{samples:>7} permutations: max error {:.2e}, max std error {worst_se:.2e}",
            est.allocation.max_gap(&exact)
        )
        .unwrap();
    }
    Ok(report)
}

fn main() -> coalloc::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
