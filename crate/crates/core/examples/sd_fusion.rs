//! Exact Shapley value of the standard-deviation game, and why merging two
//! players changes their combined share.
//!
//! `cargo run --example sd_fusion`

use std::fmt::Write;

use coalloc::game::{fuse, fusion_gap, shapley_exact};
use coalloc::variance::{sd_game, variance_game, CovarianceMatrix};
use coalloc::Coalition;

pub fn run_example() -> coalloc::Result<String> {
    let mut report = String::new();
    let cov = CovarianceMatrix::diagonal(&[1.0, 4.0, 9.0])?;
    let sd = sd_game(&cov)?;
    let phi = shapley_exact(&sd);
    writeln!(report, "sd shares: {:?}", phi.as_slice()).unwrap();

    let merged = Coalition::from_players(&[1, 2], 3)?;
    let fused = shapley_exact(&fuse(&sd, merged)?);
    writeln!(
        report,
        "players 1+2 before fusion: {:.12}, after: {:.12}",
        phi.coalition_total(merged),
        fused[1]
    )
    .unwrap();
    writeln!(report, "sd fusion gap: {:.3e}", fusion_gap(&sd, merged)?).unwrap();
    writeln!(report, "variance fusion gap: {:.3e}", fusion_gap(&variance_game(&cov)?, merged)?).unwrap();
    Ok(report)
}

fn main() -> coalloc::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
