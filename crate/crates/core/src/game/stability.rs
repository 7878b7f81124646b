//! Super/submodularity and core/anticore membership.

use rayon::prelude::*;

use super::{Allocation, TabularGame};
use crate::coalition::full_mask;
use crate::error::{Error, Result};
use crate::tol;

/// Modularity classification needs `n^2 2^(n-2)` comparisons; refuse beyond this.
pub const MAX_MODULARITY_PLAYERS: usize = 16;

/// Which of the two modularity inequalities a game satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Modularity {
    pub supermodular: bool,
    pub submodular: bool,
}

impl Modularity {
    pub fn label(&self) -> &'static str {
        match (self.supermodular, self.submodular) {
            (true, true) => "modular",
            (true, false) => "supermodular",
            (false, true) => "submodular",
            (false, false) => "neither classified",
        }
    }
}

/// Classifies the game through its second differences
/// `v(J+i+j) - v(J+i) - v(J+j) + v(J)` over all `i < j` and `J` avoiding both.
/// Nonnegative everywhere means supermodular; nonpositive means submodular.
pub fn modularity(game: &TabularGame) -> Result<Modularity> {
    let n = game.n();
    if n > MAX_MODULARITY_PLAYERS {
        return Err(Error::guard("modularity classification", MAX_MODULARITY_PLAYERS, n));
    }
    let tolerance = tol::COALITION * game.scale();
    let values = game.values();
    let full = full_mask(n) as usize;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let (min, max) = pairs
        .into_par_iter()
        .map(|(i, j)| {
            let (bi, bj) = (1usize << i, 1usize << j);
            let rest = full & !(bi | bj);
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            // enumerate subsets of `rest`
            let mut sub = 0usize;
            loop {
                let d = values[sub | bi | bj] - values[sub | bi] - values[sub | bj] + values[sub];
                min = min.min(d);
                max = max.max(d);
                if sub == rest {
                    break;
                }
                sub = (sub.wrapping_sub(rest)) & rest;
            }
            (min, max)
        })
        .reduce(
            || (f64::INFINITY, f64::NEG_INFINITY),
            |a, b| (a.0.min(b.0), a.1.max(b.1)),
        );
    Ok(Modularity {
        supermodular: min >= -tolerance,
        submodular: max <= tolerance,
    })
}

/// `v(I ∪ J) + v(I ∩ J) >= v(I) + v(J)` for every pair of coalitions.
pub fn is_supermodular(game: &TabularGame) -> Result<bool> {
    Ok(modularity(game)?.supermodular)
}

/// `v(I ∪ J) + v(I ∩ J) <= v(I) + v(J)` for every pair of coalitions.
pub fn is_submodular(game: &TabularGame) -> Result<bool> {
    Ok(modularity(game)?.submodular)
}

/// Efficient allocation no coalition can improve on: `v(J) <= Σ_{i∈J} x_i`.
pub fn in_core(game: &TabularGame, x: &Allocation) -> Result<bool> {
    membership(game, x, |value, paid, tol| value <= paid + tol)
}

/// Efficient allocation charging no coalition more than its stand-alone cost:
/// `v(J) >= Σ_{i∈J} x_i`.
pub fn in_anticore(game: &TabularGame, x: &Allocation) -> Result<bool> {
    membership(game, x, |value, paid, tol| value >= paid - tol)
}

fn membership(
    game: &TabularGame,
    x: &Allocation,
    holds: impl Fn(f64, f64, f64) -> bool + Sync,
) -> Result<bool> {
    let n = game.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let scale = game.scale();
    if (x.total() - game.grand_value()).abs() > tol::EFFICIENCY * scale {
        return Ok(false);
    }
    let tolerance = tol::COALITION * scale;
    let values = game.values();
    let full = full_mask(n) as usize;
    // Coalition payoffs by lowest-bit recursion, in one pass.
    let mut paid = vec![0.0; 1 << n];
    for bits in 1..=full {
        let low = bits.trailing_zeros() as usize;
        paid[bits] = paid[bits & (bits - 1)] + x[low];
    }
    Ok((1..full)
        .into_par_iter()
        .all(|bits| holds(values[bits], paid[bits], tolerance)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_is_both() {
        let g = TabularGame::additive(&[1.0, -3.0, 2.0, 0.5]).unwrap();
        let m = modularity(&g).unwrap();
        assert!(m.supermodular && m.submodular);
        assert_eq!(m.label(), "modular");
    }

    #[test]
    fn majority_game_is_neither() {
        let g = TabularGame::new(3, vec![0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(modularity(&g).unwrap().label(), "neither classified");
    }

    #[test]
    fn core_membership() {
        let g = TabularGame::new(3, vec![0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0]).unwrap();
        // {1,2} is worth 1 but receives nothing.
        assert!(!in_core(&g, &Allocation::new(vec![1.0, 0.0, 0.0])).unwrap());
        // not efficient
        assert!(!in_core(&g, &Allocation::new(vec![1.0, 1.0, 1.0])).unwrap());
        assert!(in_core(&g, &Allocation::new(vec![1.0])).is_err());
    }

    #[test]
    fn hedged_pair_anticore() {
        let g = TabularGame::new(2, vec![0.0, 1.0, 4.0, 1.0]).unwrap();
        let x = Allocation::new(vec![-1.0, 2.0]);
        assert!(in_anticore(&g, &x).unwrap());
        assert!(!in_core(&g, &x).unwrap());
        assert!(is_submodular(&g).unwrap());
    }

    #[test]
    fn guard_on_players() {
        let g = TabularGame::additive(&[1.0; 17]).unwrap();
        assert!(matches!(modularity(&g), Err(Error::Guard { limit: 16, .. })));
    }
}
