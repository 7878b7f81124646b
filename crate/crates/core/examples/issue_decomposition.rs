//! Split the variance game into one-player and two-player issues and compute
//! the Shapley value issue by issue, without ever building the 2^n table.
//!
//! `cargo run --release --example issue_decomposition`

use std::fmt::Write;
use std::time::Instant;

use coalloc::rng::stream_rng;
use coalloc::variance::{decompose_variance_game, decomposed_shapley, variance_shapley, CovarianceMatrix};
use coalloc::Coalition;

pub fn run_example() -> coalloc::Result<String> {
    let mut report = String::new();
    let small = CovarianceMatrix::from_rows(&[
        vec![1.0, 0.5, 0.0],
        vec![0.5, 2.0, -0.3],
        vec![0.0, -0.3, 1.5],
    ])?;
    let game = decompose_variance_game(&small);
    writeln!(report, "{} issues for 3 players", game.issues().len()).unwrap();
    for issue in game.issues() {
        writeln!(report, "  {:?}: {:?}", issue.scope(), issue.values()).unwrap();
    }
    let pair = Coalition::from_players(&[0, 1], 3)?;
    writeln!(report, "value of {pair}: {}", game.value(pair)).unwrap();
    writeln!(report, "shares: {:?}", decomposed_shapley(&game).as_slice()).unwrap();

    let n = 400;
    let large = CovarianceMatrix::random_gram(n, &mut stream_rng(3, 0))?;
    let start = Instant::now();
    let phi = decomposed_shapley(&decompose_variance_game(&large));
    let elapsed = start.elapsed();
    writeln!(
        report,
        "n = {n}: {elapsed:?}, max gap to closed form {:.1e}",
        phi.max_gap(&variance_shapley(&large))
    )
    .unwrap();
    Ok(report)
}

fn main() -> coalloc::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
