//! Games written as a sum of small "issues", each touching at most two players.
//!
//! A game `v = Σ_t v_t` where `v_t` only looks at the players in `C_t` has
//! Shapley value `Σ_t φ(v_t)`, and each `φ(v_t)` is a game on `|C_t|` players.
//! With `|C_t| <= 2` that is a handful of arithmetic per issue.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{Allocation, TabularGame, MAX_TABULAR_PLAYERS};

use super::CovarianceMatrix;

/// The players an issue concerns. Pairs are stored with `first < second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IssueScope {
    Single(usize),
    Pair(usize, usize),
}

/// One component game, tabulated over the subsets of its scope.
///
/// `values` is indexed by a local bitmask: bit 0 is the first player of the
/// scope, bit 1 the second. Singleton issues leave entries 2 and 3 at zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Issue {
    scope: IssueScope,
    values: [f64; 4],
}

impl Issue {
    pub fn single(player: usize, value: f64) -> Self {
        Issue {
            scope: IssueScope::Single(player),
            values: [0.0, value, 0.0, 0.0],
        }
    }

    /// Issue worth `value` only when both players are present.
    pub fn joint(a: usize, b: usize, value: f64) -> Result<Self> {
        Self::new(&[a, b], &[0.0, 0.0, 0.0, value])
    }

    /// Generic constructor from a player list and a table over its subsets
    /// (local bit `k` = `players[k]`).
    pub fn new(players: &[usize], table: &[f64]) -> Result<Self> {
        let scope = match *players {
            [a] => IssueScope::Single(a),
            [a, b] if a < b => IssueScope::Pair(a, b),
            [a, b] if a > b && table.len() == 4 => {
                // lower index becomes local bit 0
                return Self::new(&[b, a], &[table[0], table[2], table[1], table[3]]);
            }
            [a, b] if a == b => {
                return Err(Error::InvalidGame("issue names the same player twice".into()))
            }
            [_, _] => {
                return Err(Error::InvalidGame(format!(
                    "issue table has {} entries, expected 4",
                    table.len()
                )))
            }
            [] => return Err(Error::InvalidGame("issue concerns no player".into())),
            _ => {
                return Err(Error::InvalidGame(format!(
                    "issue concerns {} players, at most 2 supported",
                    players.len()
                )))
            }
        };
        let expected = 1 << players.len();
        if table.len() != expected {
            return Err(Error::InvalidGame(format!(
                "issue table has {} entries, expected {expected}",
                table.len()
            )));
        }
        if table[0] != 0.0 {
            return Err(Error::InvalidGame("issue value of the empty set must be 0".into()));
        }
        if table.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGame("issue value is not finite".into()));
        }
        let mut values = [0.0; 4];
        values[..expected].copy_from_slice(table);
        Ok(Issue { scope, values })
    }

    pub fn scope(&self) -> IssueScope {
        self.scope
    }

    pub fn values(&self) -> &[f64] {
        match self.scope {
            IssueScope::Single(_) => &self.values[..2],
            IssueScope::Pair(..) => &self.values,
        }
    }

    /// `v_t(J ∩ C_t)` for a coalition given by a membership test.
    pub fn value_with(&self, contains: impl Fn(usize) -> bool) -> f64 {
        match self.scope {
            IssueScope::Single(a) => self.values[contains(a) as usize],
            IssueScope::Pair(a, b) => self.values[contains(a) as usize | (contains(b) as usize) << 1],
        }
    }

    fn max_player(&self) -> usize {
        match self.scope {
            IssueScope::Single(a) => a,
            IssueScope::Pair(_, b) => b,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecomposedGame {
    n: usize,
    issues: Vec<Issue>,
}

impl DecomposedGame {
    pub fn new(n: usize, issues: Vec<Issue>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGame("a game needs at least one player".into()));
        }
        if let Some(issue) = issues.iter().find(|t| t.max_player() >= n) {
            return Err(Error::InvalidGame(format!(
                "issue {:?} names a player outside 0..{n}",
                issue.scope
            )));
        }
        Ok(DecomposedGame { n, issues })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn issues(&self) -> &[Issue] {
        &self.issues
    }

    /// `Σ_t v_t(J ∩ C_t)`.
    pub fn value(&self, coalition: Coalition) -> f64 {
        self.issues.iter().map(|t| t.value_with(|p| coalition.contains(p))).sum()
    }

    /// Expands to an explicit table (for checking; exponential in `n`).
    pub fn to_tabular(&self) -> Result<TabularGame> {
        if self.n > MAX_TABULAR_PLAYERS {
            return Err(Error::guard("tabular game size", MAX_TABULAR_PLAYERS, self.n));
        }
        TabularGame::from_fn(self.n, |c| self.value(c))
    }
}

/// Issue decomposition of the variance game: one singleton issue `Var[X_i]` per
/// player and one pair issue worth `2 Cov[X_i, X_j]` when both `i` and `j`
/// are present, for each `i < j` with a nonzero covariance.
pub fn decompose_variance_game(cov: &CovarianceMatrix) -> DecomposedGame {
    let n = cov.n();
    let mut issues: Vec<Issue> = (0..n).map(|i| Issue::single(i, cov.get(i, i))).collect();
    for i in 0..n {
        for j in i + 1..n {
            let c = cov.get(i, j);
            if c != 0.0 {
                issues.push(Issue {
                    scope: IssueScope::Pair(i, j),
                    values: [0.0, 0.0, 0.0, 2.0 * c],
                });
            }
        }
    }
    DecomposedGame { n, issues }
}

/// Shapley value of a decomposed game in `O(Σ_t 2^|C_t|)`.
///
/// A singleton issue pays its value to its owner. A pair issue `(a, b)` is an
/// exact two-player game: `φ_a = (v(a) + v(ab) - v(b)) / 2` and symmetrically
/// for `b`, which splits a joint-only value in half.
pub fn decomposed_shapley(game: &DecomposedGame) -> Allocation {
    let mut phi = vec![0.0; game.n];
    for issue in &game.issues {
        match issue.scope {
            IssueScope::Single(a) => phi[a] += issue.values[1],
            IssueScope::Pair(a, b) => {
                let [_, va, vb, vab] = issue.values;
                phi[a] += 0.5 * (va + vab - vb);
                phi[b] += 0.5 * (vb + vab - va);
            }
        }
    }
    Allocation::new(phi)
}
