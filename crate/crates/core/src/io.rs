//! File formats: returns and moment CSVs in, allocations out.
//!
//! * Returns CSV: a header row of asset names, then one numeric row per period.
//! * Covariance CSV: `n` rows of `n` numbers, no header; symmetrized on load.
//! * Mean CSV: a single row of `n` numbers.
//! * Allocation CSV: header `player,shapley`, one row per player.
//! * Allocation JSON: `{"method", "theta", "allocation", "total"}`.
//!
//! Numbers are written with 12 significant digits.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::Allocation;
use crate::majorization::Counterexample;
use crate::variance::{CovarianceMatrix, MeanVector};

/// Periodic returns, one column per asset. Column order is player order.
#[derive(Clone, Debug, PartialEq)]
pub struct ReturnsMatrix {
    names: Vec<String>,
    periods: usize,
    values: Vec<f64>,
}

impl ReturnsMatrix {
    pub fn new(names: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidParameter("returns need at least one asset".into()));
        }
        if rows.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "returns need at least 2 observations, got {}",
                rows.len()
            )));
        }
        for (t, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "observation {t}, asset {:?} is not finite",
                    names[j]
                )));
            }
        }
        Ok(ReturnsMatrix {
            names,
            periods: rows.len(),
            values: rows.concat(),
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn periods(&self) -> usize {
        self.periods
    }

    pub fn assets(&self) -> usize {
        self.names.len()
    }

    pub fn observation(&self, t: usize) -> &[f64] {
        let n = self.assets();
        &self.values[t * n..(t + 1) * n]
    }
}

/// Reads a returns CSV. Errors name the offending line and column.
pub fn load_returns(path: impl AsRef<Path>) -> Result<ReturnsMatrix> {
    let path = path.as_ref();
    parse_returns(open(path)?, path)
}

pub fn parse_returns(reader: impl Read, origin: &Path) -> Result<ReturnsMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let names: Vec<String> = rdr
        .headers()
        .map_err(|e| Error::parse(origin, e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    if names.is_empty() || names.iter().all(String::is_empty) {
        return Err(Error::parse(origin, "missing header row of asset names"));
    }
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::parse(origin, e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != names.len() {
            return Err(Error::parse(
                origin,
                format!("line {line}: {} fields, header has {}", record.len(), names.len()),
            ));
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(j, cell)| parse_cell(cell, origin, line, &names[j]))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() < 2 {
        return Err(Error::parse(
            origin,
            format!("need at least 2 observations, found {}", rows.len()),
        ));
    }
    ReturnsMatrix::new(names, rows)
}

fn parse_cell(cell: &str, origin: &Path, line: u64, column: &str) -> Result<f64> {
    match cell.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::parse(
            origin,
            format!("line {line}, column {column:?}: {cell:?} is not a finite number"),
        )),
    }
}

/// Column means and the unbiased (`T - 1`) sample covariance.
pub fn sample_moments(returns: &ReturnsMatrix) -> Result<(MeanVector, CovarianceMatrix)> {
    let n = returns.assets();
    let t = returns.periods();
    let mut mean = vec![0.0; n];
    for k in 0..t {
        for (m, r) in mean.iter_mut().zip(returns.observation(k)) {
            *m += r;
        }
    }
    mean.iter_mut().for_each(|m| *m /= t as f64);

    let mut cov = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let s: f64 = (0..t)
                .map(|k| {
                    let row = returns.observation(k);
                    (row[i] - mean[i]) * (row[j] - mean[j])
                })
                .sum();
            let c = s / (t - 1) as f64;
            cov[i * n + j] = c;
            cov[j * n + i] = c;
        }
    }
    Ok((MeanVector::new(mean)?, CovarianceMatrix::new(n, cov)?))
}

/// Reads a square, headerless covariance CSV.
pub fn load_covariance(path: impl AsRef<Path>) -> Result<CovarianceMatrix> {
    let path = path.as_ref();
    let rows = read_numeric_rows(open(path)?, path)?;
    let n = rows.len();
    if n == 0 {
        return Err(Error::parse(path, "empty covariance file"));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::parse(
            path,
            format!("row {} has {} entries, expected {n} for a square matrix", i + 1, r.len()),
        ));
    }
    CovarianceMatrix::from_rows(&rows)
}

/// Reads a one-row CSV of expected returns.
pub fn load_mean(path: impl AsRef<Path>) -> Result<MeanVector> {
    let path = path.as_ref();
    let mut rows = read_numeric_rows(open(path)?, path)?;
    if rows.len() != 1 {
        return Err(Error::parse(path, format!("expected a single row, found {}", rows.len())));
    }
    MeanVector::new(rows.remove(0))
}

/// Reads a one-row CSV of per-player payoffs.
pub fn load_allocation(path: impl AsRef<Path>) -> Result<Allocation> {
    let path = path.as_ref();
    let mut rows = read_numeric_rows(open(path)?, path)?;
    if rows.len() != 1 {
        return Err(Error::parse(path, format!("expected a single row, found {}", rows.len())));
    }
    Ok(Allocation::new(rows.remove(0)))
}

fn read_numeric_rows(reader: impl Read, origin: &Path) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::parse(origin, e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let row = record
            .iter()
            .enumerate()
            .map(|(j, cell)| parse_cell(cell, origin, line, &(j + 1).to_string()))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

/// `x` with 12 significant digits, in the shortest of fixed or exponent form
/// (like C's `%.12g`), independent of locale.
pub fn format_number(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_owned()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

/// `x` rounded to the 12 digits [`format_number`] prints.
pub fn round_number(x: f64) -> f64 {
    format_number(x).parse().unwrap_or(x)
}

/// Writes `player,shapley` rows. `names`, when given, label the players;
/// otherwise the 0-based index is used.
pub fn write_allocation_csv(out: &mut dyn Write, allocation: &Allocation, names: Option<&[String]>) -> std::io::Result<()> {
    writeln!(out, "player,shapley")?;
    for (i, v) in allocation.as_slice().iter().enumerate() {
        match names {
            Some(names) => writeln!(out, "{},{}", csv_field(&names[i]), format_number(*v))?,
            None => writeln!(out, "{i},{}", format_number(*v))?,
        }
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

#[derive(Serialize)]
struct AllocationRecord<'a> {
    method: &'a str,
    theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    players: Option<&'a [String]>,
    allocation: Vec<f64>,
    total: f64,
}

/// The allocation as a JSON object `{"method", "theta", "allocation", "total"}`.
pub fn allocation_json(method: &str, theta: Option<f64>, allocation: &Allocation, names: Option<&[String]>) -> Result<String> {
    let record = AllocationRecord {
        method,
        theta,
        players: names,
        allocation: allocation.as_slice().iter().copied().map(round_number).collect(),
        total: round_number(allocation.total()),
    };
    Ok(serde_json::to_string_pretty(&record)?)
}

/// One line per counterexample: sample index, margin, then the matrix row-major.
pub fn write_counterexamples_csv(out: &mut dyn Write, found: &[Counterexample]) -> std::io::Result<()> {
    let n = found.first().map_or(0, |c| c.covariance.n());
    write!(out, "sample,margin")?;
    for i in 0..n {
        for j in 0..n {
            write!(out, ",s_{i}_{j}")?;
        }
    }
    writeln!(out)?;
    for c in found {
        write!(out, "{},{:e}", c.sample, c.margin)?;
        for v in c.covariance.entries() {
            // full precision so the matrix can be replayed exactly
            write!(out, ",{v:e}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn returns(text: &str) -> Result<ReturnsMatrix> {
        parse_returns(text.as_bytes(), Path::new("mem.csv"))
    }

    #[test]
    fn parses_small_file() {
        let r = returns("a,b\n0.1,0.2\n0.0,-0.1\n0.3,0.4\n").unwrap();
        assert_eq!((r.periods(), r.assets()), (3, 2));
        assert_eq!(r.names(), &["a", "b"]);
        assert_eq!(r.observation(1), &[0.0, -0.1]);
    }

    #[test]
    fn nan_cell_is_named() {
        let err = returns("a,b\n0.1,NaN\n0.0,0.1\n").unwrap_err().to_string();
        assert!(err.contains("line 2") && err.contains("\"b\"") && err.contains("NaN"), "{err}");
        let err = returns("a,b\n0.1,x\n0.0,0.1\n").unwrap_err().to_string();
        assert!(err.contains("\"x\""), "{err}");
    }

    #[test]
    fn ragged_and_short_files() {
        let err = returns("a,b\n0.1\n0.0,0.1\n").unwrap_err().to_string();
        assert!(err.contains("line 2") && err.contains("1 fields"), "{err}");
        let err = returns("a,b\n").unwrap_err().to_string();
        assert!(err.contains("at least 2"), "{err}");
        assert!(returns("a,b\n1,2\n").is_err());
    }

    #[test]
    fn moments_by_hand() {
        let r = returns("x,y\n1,0\n0,1\n").unwrap();
        let (mu, cov) = sample_moments(&r).unwrap();
        assert_eq!(mu.as_slice(), &[0.5, 0.5]);
        assert_eq!(cov.entries(), &[0.5, -0.5, -0.5, 0.5]);
    }

    #[test]
    fn constant_columns_have_zero_covariance() {
        let r = returns("x,y\n2,3\n2,3\n2,3\n").unwrap();
        let (_, cov) = sample_moments(&r).unwrap();
        assert!(cov.entries().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-1.0), "-1");
        assert_eq!(format_number(2.0), "2");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(14f64.sqrt()), "3.74165738677");
        assert_eq!(format_number(1234567.5), "1234567.5");
        assert_eq!(format_number(1e-7), "1e-7");
        assert_eq!(format_number(-2.5e15), "-2.5e15");
        assert_eq!(format_number(123456789012345.0), "1.23456789012e14");
    }

    #[test]
    fn allocation_outputs() {
        let a = Allocation::new(vec![-1.0, 2.0]);
        let mut buf = Vec::new();
        write_allocation_csv(&mut buf, &a, None).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "player,shapley\n0,-1\n1,2\n");
        let json = allocation_json("variance", None, &a, None).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["method"], "variance");
        assert_eq!(v["theta"], serde_json::Value::Null);
        assert_eq!(v["allocation"], serde_json::json!([-1.0, 2.0]));
        assert_eq!(v["total"], 1.0);
    }
}
