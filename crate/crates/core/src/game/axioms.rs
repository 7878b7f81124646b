//! Dummy players and symmetric pairs, found by exhaustive comparison.
//!
//! Each comparison uses the strict tolerance `1e-12 * scale`; near-equality is
//! not chained transitively.

use super::TabularGame;
use crate::coalition::full_mask;
use crate::tol;

/// Players whose marginal contribution to every coalition is zero.
pub fn find_dummies(game: &TabularGame) -> Vec<usize> {
    let n = game.n();
    let tolerance = tol::COALITION * game.scale();
    let full = full_mask(n) as usize;
    (0..n)
        .filter(|&i| {
            let bit = 1usize << i;
            (0..=full)
                .filter(|j| j & bit == 0)
                .all(|j| (game[j | bit] - game[j]).abs() <= tolerance)
        })
        .collect()
}

/// Pairs `(i, j)` with `i < j` such that `v(J+i) = v(J+j)` for every `J` avoiding both.
pub fn symmetric_pairs(game: &TabularGame) -> Vec<(usize, usize)> {
    let n = game.n();
    let tolerance = tol::COALITION * game.scale();
    let full = full_mask(n) as usize;
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (bi, bj) = (1usize << i, 1usize << j);
            let symmetric = (0..=full)
                .filter(|s| s & (bi | bj) == 0)
                .all(|s| (game[s | bi] - game[s | bj]).abs() <= tolerance);
            if symmetric {
                pairs.push((i, j));
            }
        }
    }
    pairs
}
