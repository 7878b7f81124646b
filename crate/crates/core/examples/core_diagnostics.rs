//! Classify games by modularity and test whether the Shapley value is stable.
//!
//! `cargo run --example core_diagnostics`

use std::fmt::Write;

use coalloc::game::{in_anticore, in_core, modularity, shapley_exact};
use coalloc::variance::{variance_game, CovarianceMatrix};
use coalloc::TabularGame;

fn describe(name: &str, game: &TabularGame, report: &mut String) -> coalloc::Result<()> {
    let phi = shapley_exact(game);
    writeln!(
        report,
        "{name}: {} | core {} | anticore {}",
        modularity(game)?.label(),
        in_core(game, &phi)?,
        in_anticore(game, &phi)?
    )
    .unwrap();
    Ok(())
}

pub fn run_example() -> coalloc::Result<String> {
    let mut report = String::new();
    let positive = CovarianceMatrix::from_rows(&[
        vec![2.0, 1.0, 0.5],
        vec![1.0, 3.0, 0.2],
        vec![0.5, 0.2, 1.0],
    ])?;
    let negative = CovarianceMatrix::from_rows(&[vec![1.0, -2.0], vec![-2.0, 4.0]])?;
    let mixed = CovarianceMatrix::from_rows(&[
        vec![2.0, 1.0, -0.5],
        vec![1.0, 3.0, 0.2],
        vec![-0.5, 0.2, 1.0],
    ])?;
    describe("positively correlated", &variance_game(&positive)?, &mut report)?;
    describe("hedged pair", &variance_game(&negative)?, &mut report)?;
    describe("mixed signs", &variance_game(&mixed)?, &mut report)?;

    // Three-player majority game: any two players win.
    let majority = TabularGame::from_fn(3, |c| if c.len() >= 2 { 1.0 } else { 0.0 })?;
    describe("majority vote", &majority, &mut report)?;
    Ok(report)
}

fn main() -> coalloc::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
