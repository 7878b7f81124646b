//! Exact and Monte-Carlo Shapley values of tabular games.

use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::{Allocation, TabularGame};
use crate::error::{Error, Result};
use crate::rng::{chunk_ranges, stream_rng};

/// Smaller games are solved on the calling thread.
const PARALLEL_MIN_PLAYERS: usize = 12;

/// Weights `w(s) = s! (n-s-1)! / n!` for `s = 0..n`.
///
/// Built with the recurrence `w(s+1) = w(s) (s+1) / (n-s-1)` from `w(0) = 1/n`,
/// which never forms a factorial.
pub fn shapley_weights(n: usize) -> Vec<f64> {
    assert!(n > 0, "shapley weights need at least one player");
    let mut w = Vec::with_capacity(n);
    let mut cur = 1.0 / n as f64;
    for s in 0..n {
        w.push(cur);
        if s + 1 < n {
            cur = cur * (s + 1) as f64 / (n - s - 1) as f64;
        }
    }
    w
}

/// Exact Shapley value by the weighted subset formula.
///
/// Costs `n * 2^(n-1)` table lookups. Players are solved in parallel, each by a
/// serial sum in a fixed order, so the result does not depend on the thread count.
pub fn shapley_exact(game: &TabularGame) -> Allocation {
    let n = game.n();
    let weights = shapley_weights(n);
    let values = game.values();
    let player_value = |i: usize| {
        let low = (1usize << i) - 1;
        let bit = 1usize << i;
        let mut acc = 0.0;
        for k in 0..1usize << (n - 1) {
            // spread k around a zero at bit i
            let without = (k & low) | ((k & !low) << 1);
            let w = weights[without.count_ones() as usize];
            acc += w * (values[without | bit] - values[without]);
        }
        acc
    };
    let phi = if n < PARALLEL_MIN_PLAYERS {
        (0..n).map(player_value).collect()
    } else {
        (0..n).into_par_iter().map(player_value).collect()
    };
    Allocation::new(phi)
}

/// Settings for the permutation-sampling estimator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PermutationSampleConfig {
    sample_count: u64,
    seed: u64,
}

impl PermutationSampleConfig {
    pub fn new(sample_count: u64, seed: u64) -> Result<Self> {
        if sample_count == 0 {
            return Err(Error::InvalidParameter("sample_count must be at least 1".into()));
        }
        Ok(PermutationSampleConfig { sample_count, seed })
    }

    pub fn sample_count(&self) -> u64 {
        self.sample_count
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Permutation-sampling estimate with per-player standard errors.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledShapley {
    pub allocation: Allocation,
    pub std_error: Vec<f64>,
}

/// Unbiased Monte-Carlo Shapley estimate from uniformly drawn player orders.
pub fn shapley_sampled(game: &TabularGame, cfg: PermutationSampleConfig) -> Allocation {
    shapley_sampled_with_error(game, cfg).allocation
}

pub fn shapley_sampled_with_error(game: &TabularGame, cfg: PermutationSampleConfig) -> SampledShapley {
    let n = game.n();
    let values = game.values();
    let partials: Vec<(Vec<f64>, Vec<f64>)> = chunk_ranges(cfg.sample_count)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|range| {
            let mut sum = vec![0.0; n];
            let mut sum_sq = vec![0.0; n];
            let mut order: Vec<usize> = (0..n).collect();
            for k in range {
                let mut rng = stream_rng(cfg.seed, k);
                order.sort_unstable();
                order.shuffle(&mut rng);
                let mut bits = 0usize;
                let mut prev = 0.0;
                for &p in &order {
                    bits |= 1 << p;
                    let cur = values[bits];
                    let delta = cur - prev;
                    sum[p] += delta;
                    sum_sq[p] += delta * delta;
                    prev = cur;
                }
            }
            (sum, sum_sq)
        })
        .collect();

    let mut sum = vec![0.0; n];
    let mut sum_sq = vec![0.0; n];
    for (s, q) in &partials {
        for i in 0..n {
            sum[i] += s[i];
            sum_sq[i] += q[i];
        }
    }
    let m = cfg.sample_count as f64;
    let mean: Vec<f64> = sum.iter().map(|s| s / m).collect();
    let std_error = if cfg.sample_count < 2 {
        vec![f64::INFINITY; n]
    } else {
        mean.iter()
            .zip(&sum_sq)
            .map(|(mu, q)| {
                let var = ((q - m * mu * mu) / (m - 1.0)).max(0.0);
                (var / m).sqrt()
            })
            .collect()
    };
    SampledShapley {
        allocation: Allocation::new(mean),
        std_error,
    }
}
