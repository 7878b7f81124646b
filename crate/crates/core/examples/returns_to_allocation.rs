//! Estimate moments from a returns CSV and write the allocation as CSV and JSON.
//!
//! `cargo run --example returns_to_allocation [returns.csv]`

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use coalloc::io::{allocation_json, load_returns, parse_returns, sample_moments, write_allocation_csv};
use coalloc::variance::{utility_allocation, variance_shapley, UtilityParams};

const SAMPLE: &str = "\
equity,credit,rates
0.021,0.004,-0.006
-0.015,0.002,0.009
0.032,0.006,-0.004
-0.008,-0.001,0.007
0.011,0.003,0.001
";

pub fn run_example() -> coalloc::Result<String> {
    let returns = match std::env::args_os().nth(1) {
        Some(p) => load_returns(PathBuf::from(p))?,
        None => parse_returns(SAMPLE.as_bytes(), Path::new("sample.csv"))?,
    };
    let (mu, cov) = sample_moments(&returns)?;

    let mut report = String::new();
    writeln!(report, "{} periods, {} assets", returns.periods(), returns.assets()).unwrap();
    let mut csv = Vec::new();
    write_allocation_csv(&mut csv, &variance_shapley(&cov), Some(returns.names())).expect("in-memory write");
    report.push_str(&String::from_utf8_lossy(&csv));
    let gamma = utility_allocation(&mu, &cov, UtilityParams::new(2.0)?)?;
    writeln!(report, "{}", allocation_json("utility", Some(2.0), &gamma, Some(returns.names()))?).unwrap();
    Ok(report)
}

fn main() -> coalloc::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
