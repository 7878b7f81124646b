//! Finite cooperative games in explicit (tabular) form and the solution
//! concepts defined on them.

mod axioms;
mod fusion;
mod shapley;
mod stability;

use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::coalition::{full_mask, Coalition};
use crate::error::{Error, Result};
use crate::tol;

pub use axioms::{find_dummies, symmetric_pairs};
pub use fusion::{fuse, fusion_gap, satisfies_fusion_property};
pub use shapley::{
    shapley_exact, shapley_sampled, shapley_sampled_with_error, shapley_weights,
    PermutationSampleConfig, SampledShapley,
};
pub use stability::{
    in_anticore, in_core, is_submodular, is_supermodular, modularity, Modularity,
    MAX_MODULARITY_PLAYERS,
};

/// Largest player count accepted by [`TabularGame`] (a table of `2^24` values).
pub const MAX_TABULAR_PLAYERS: usize = 24;

/// A characteristic function stored as one value per coalition bitmask.
///
/// `values[0]` (the empty coalition) is always exactly zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGame")]
pub struct TabularGame {
    n: usize,
    values: Vec<f64>,
}

#[derive(Deserialize)]
struct RawGame {
    n: usize,
    values: Vec<f64>,
}

impl TryFrom<RawGame> for TabularGame {
    type Error = Error;

    fn try_from(raw: RawGame) -> Result<Self> {
        TabularGame::new(raw.n, raw.values)
    }
}

impl TabularGame {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        check_players(n)?;
        if values.len() != 1 << n {
            return Err(Error::InvalidGame(format!(
                "{} values given for {n} players, expected {}",
                values.len(),
                1usize << n
            )));
        }
        if values[0] != 0.0 {
            return Err(Error::InvalidGame(format!(
                "value of the empty coalition is {}, must be 0",
                values[0]
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidGame(format!("value of coalition {k:#b} is not finite")));
        }
        Ok(TabularGame { n, values })
    }

    /// Tabulates `f` over every coalition; `f` is never called on the empty set.
    pub fn from_fn(n: usize, mut f: impl FnMut(Coalition) -> f64) -> Result<Self> {
        check_players(n)?;
        let mut values = vec![0.0; 1 << n];
        for (bits, v) in values.iter_mut().enumerate().skip(1) {
            *v = f(Coalition::new(bits as u64, n)?);
        }
        Self::new(n, values)
    }

    /// The additive game `v(J) = Σ_{i∈J} weights[i]`.
    pub fn additive(weights: &[f64]) -> Result<Self> {
        Self::from_fn(weights.len(), |c| c.players().map(|i| weights[i]).sum())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn value(&self, coalition: Coalition) -> f64 {
        self.values[coalition.bits() as usize]
    }

    /// Value of the grand coalition.
    pub fn grand_value(&self) -> f64 {
        self.values[full_mask(self.n) as usize]
    }

    pub fn grand(&self) -> Coalition {
        Coalition::new(full_mask(self.n), self.n).expect("n validated at construction")
    }

    /// `1 + max |v(J)|`, the reference magnitude for every tolerance on this game.
    pub fn scale(&self) -> f64 {
        tol::scale_of([self.values.as_slice()])
    }

    /// The game `alpha * self + beta * other`.
    pub fn combine(&self, alpha: f64, other: &TabularGame, beta: f64) -> Result<TabularGame> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        TabularGame::new(self.n, values)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl Index<usize> for TabularGame {
    type Output = f64;

    fn index(&self, bits: usize) -> &f64 {
        &self.values[bits]
    }
}

/// One payoff per player.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Allocation(Vec<f64>);

impl Allocation {
    pub fn new(phi: Vec<f64>) -> Self {
        Allocation(phi)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Sum of the payoffs of the players in `coalition`.
    pub fn coalition_total(&self, coalition: Coalition) -> f64 {
        coalition.players().map(|i| self.0[i]).sum()
    }

    /// Largest coordinatewise absolute difference.
    pub fn max_gap(&self, other: &Allocation) -> f64 {
        assert_eq!(self.len(), other.len(), "allocations of different length");
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0, |m, (a, b)| f64::max(m, (a - b).abs()))
    }
}

impl Index<usize> for Allocation {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl From<Vec<f64>> for Allocation {
    fn from(v: Vec<f64>) -> Self {
        Allocation(v)
    }
}

fn check_players(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidGame("a game needs at least one player".into()));
    }
    if n > MAX_TABULAR_PLAYERS {
        return Err(Error::guard("tabular game size", MAX_TABULAR_PLAYERS, n));
    }
    Ok(())
}
