//! Merging a coalition of players into a single player.

use super::{shapley_exact, TabularGame};
use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::tol;

/// The quotient game in which every member of `merged` acts as one player.
///
/// Remaining players keep their relative order at indices `0..n-|merged|`; the
/// fused player takes the last index.
pub fn fuse(game: &TabularGame, merged: Coalition) -> Result<TabularGame> {
    let n = game.n();
    if merged.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: merged.n(),
        });
    }
    if merged.is_empty() {
        return Err(Error::InvalidCoalition("cannot fuse an empty coalition".into()));
    }
    let kept: Vec<usize> = merged.complement().players().collect();
    let fused_n = kept.len() + 1;
    let fused_bit = 1u64 << kept.len();
    TabularGame::from_fn(fused_n, |k| {
        let mut bits = if k.bits() & fused_bit != 0 { merged.bits() } else { 0 };
        for (new, &old) in kept.iter().enumerate() {
            if k.bits() >> new & 1 == 1 {
                bits |= 1 << old;
            }
        }
        game[bits as usize]
    })
}

/// `φ_fused(fuse(game, merged)) - Σ_{i∈merged} φ_i(game)`.
pub fn fusion_gap(game: &TabularGame, merged: Coalition) -> Result<f64> {
    let fused = fuse(game, merged)?;
    let fused_phi = shapley_exact(&fused);
    let phi = shapley_exact(game);
    Ok(fused_phi[fused.n() - 1] - phi.coalition_total(merged))
}

/// Whether fusing `merged` leaves the merged players' total Shapley payoff unchanged.
pub fn satisfies_fusion_property(game: &TabularGame, merged: Coalition) -> Result<bool> {
    Ok(fusion_gap(game, merged)?.abs() <= tol::EFFICIENCY * game.scale())
}
