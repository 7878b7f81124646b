//! Check on random matrices that normalized variance shares majorize
//! normalized standard-deviation shares.
//!
//! `cargo run --release --example conjecture_check`

use std::fmt::Write;

use coalloc::majorization::{
    majorizes, n2_margin, normalized_allocations, verify_conjecture_diagonal, verify_conjecture_general,
};
use coalloc::variance::CovarianceMatrix;

pub fn run_example() -> coalloc::Result<String> {
    let mut report = String::new();
    let cov = CovarianceMatrix::diagonal(&[1.0, 4.0, 9.0])?;
    let norm = normalized_allocations(&cov)?;
    writeln!(report, "variance shares {:?}", norm.variance).unwrap();
    writeln!(report, "sd shares       {:?}", norm.sd).unwrap();
    writeln!(report, "majorized: {}, slack {:.4}", majorizes(&norm.variance, &norm.sd)?, norm.margin()).unwrap();
    writeln!(report, "two-asset margin at rho = -0.5: {:.4}", n2_margin(0.6, 0.8, -0.5)?).unwrap();

    for n in 3..=5 {
        let r = verify_conjecture_diagonal(n, 100_000, 1)?;
        writeln!(report, "diagonal n = {n}: {} violations, worst margin {:.3e}", r.violations, r.worst_margin).unwrap();
    }
    let r = verify_conjecture_general(3, 20_000, 1)?;
    writeln!(
        report,
        "general n = 3: {} violations, {} near misses, worst margin {:.3e}",
        r.violations, r.near_misses, r.worst_margin
    )
    .unwrap();
    Ok(report)
}

fn main() -> coalloc::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
