//! Test-only oracles and fixtures, independent of the library's solvers.
#![allow(dead_code)]

use coalloc::game::TabularGame;
use coalloc::variance::CovarianceMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shapley value by averaging marginal contributions over all `n!` orders
/// (Heap's algorithm).
pub fn shapley_by_permutations(game: &TabularGame) -> Vec<f64> {
    let n = game.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut phi = vec![0.0; n];
    let mut count = 0u64;
    let visit = |p: &[usize], phi: &mut Vec<f64>| {
        let mut bits = 0usize;
        let mut prev = 0.0;
        for &i in p {
            bits |= 1 << i;
            phi[i] += game[bits] - prev;
            prev = game[bits];
        }
    };
    let mut c = vec![0usize; n];
    visit(&perm, &mut phi);
    count += 1;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm, &mut phi);
            count += 1;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    phi.iter().map(|v| v / count as f64).collect()
}

/// Variance of a coalition straight from the bilinear form.
pub fn coalition_variance(cov: &CovarianceMatrix, bits: usize) -> f64 {
    let members: Vec<usize> = (0..cov.n()).filter(|i| bits >> i & 1 == 1).collect();
    members
        .iter()
        .flat_map(|&i| members.iter().map(move |&j| (i, j)))
        .map(|(i, j)| cov.get(i, j))
        .sum()
}

pub fn random_game<R: Rng>(n: usize, rng: &mut R) -> TabularGame {
    let mut values: Vec<f64> = (0..1 << n).map(|_| rng.random_range(-10.0..10.0)).collect();
    values[0] = 0.0;
    TabularGame::new(n, values).unwrap()
}

/// `B Bᵀ` with `B` an `n × k` standard-normal-ish factor (uniform entries).
pub fn random_psd<R: Rng>(n: usize, rng: &mut R) -> CovarianceMatrix {
    let k = rng.random_range(1..=n + 2);
    let b: Vec<f64> = (0..n * k).map(|_| rng.random_range(-2.0..2.0)).collect();
    gram(n, k, &b)
}

/// PSD matrix with every entry `>= 0`.
pub fn random_nonnegative_psd<R: Rng>(n: usize, rng: &mut R) -> CovarianceMatrix {
    let k = rng.random_range(1..=n + 2);
    let b: Vec<f64> = (0..n * k).map(|_| rng.random_range(0.0..2.0)).collect();
    gram(n, k, &b)
}

/// Diagonally dominant matrix with nonpositive off-diagonal entries (PSD).
pub fn random_nonpositive_psd<R: Rng>(n: usize, rng: &mut R) -> CovarianceMatrix {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let c = if rng.random_bool(0.7) { -rng.random_range(0.0..1.0) } else { 0.0 };
            m[i * n + j] = c;
            m[j * n + i] = c;
        }
    }
    for i in 0..n {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| -m[i * n + j]).sum();
        m[i * n + i] = off + rng.random_range(0.0..1.0);
    }
    CovarianceMatrix::new(n, m).unwrap()
}

/// Covariance of `(Y_1, …, Y_{n-1}, -Σ Y_k)` for a random PSD covariance of `Y`.
pub fn zero_total_psd<R: Rng>(n: usize, rng: &mut R) -> CovarianceMatrix {
    let inner = random_psd(n - 1, rng);
    // Σ = B C Bᵀ with B = [I; -1ᵀ]
    let col = |i: usize, j: usize| -> f64 {
        // (C Bᵀ)_{i j} for i < n-1
        if j < n - 1 {
            inner.get(i, j)
        } else {
            -(0..n - 1).map(|k| inner.get(i, k)).sum::<f64>()
        }
    };
    let mut m = vec![0.0; n * n];
    for j in 0..n {
        for i in 0..n {
            m[i * n + j] = if i < n - 1 {
                col(i, j)
            } else {
                -(0..n - 1).map(|k| col(k, j)).sum::<f64>()
            };
        }
    }
    CovarianceMatrix::new(n, m).unwrap()
}

fn gram(n: usize, k: usize, b: &[f64]) -> CovarianceMatrix {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = (0..k).map(|t| b[i * k + t] * b[j * k + t]).sum();
        }
    }
    CovarianceMatrix::new(n, m).unwrap()
}

pub fn hedged_pair() -> CovarianceMatrix {
    CovarianceMatrix::from_rows(&[vec![1.0, -2.0], vec![-2.0, 4.0]]).unwrap()
}

/// `-X_1 = X_2 = X_3 = X_4`, unit variance.
pub fn hedged_four() -> CovarianceMatrix {
    CovarianceMatrix::from_rows(&[
        vec![1.0, -1.0, -1.0, -1.0],
        vec![-1.0, 1.0, 1.0, 1.0],
        vec![-1.0, 1.0, 1.0, 1.0],
        vec![-1.0, 1.0, 1.0, 1.0],
    ])
    .unwrap()
}

/// `X_1 = X_2`, `X_4 = -X_3`, with `X_2, X_3` i.i.d.
pub fn exchangeable_four() -> CovarianceMatrix {
    CovarianceMatrix::from_rows(&[
        vec![1.0, 1.0, 0.0, 0.0],
        vec![1.0, 1.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0, -1.0],
        vec![0.0, 0.0, -1.0, 1.0],
    ])
    .unwrap()
}

pub fn diag_149() -> CovarianceMatrix {
    CovarianceMatrix::diagonal(&[1.0, 4.0, 9.0]).unwrap()
}

/// Standard-deviation Shapley value of `diag(1, 4, 9)`, from its closed radicals.
pub fn diag_149_sd_shapley() -> [f64; 3] {
    let s = f64::sqrt;
    [
        (2.0 * s(14.0) + s(10.0) + s(5.0) - 3.0 - 2.0 * s(13.0)) / 6.0,
        (2.0 * s(14.0) + s(13.0) + s(5.0) - 2.0 * s(10.0)) / 6.0,
        (2.0 * s(14.0) + s(13.0) + s(10.0) + 3.0 - 2.0 * s(5.0)) / 6.0,
    ]
}

/// Shapley value of the two-player game `diag(1, 13)` (players 2 and 3 fused).
pub fn diag_1_13_sd_shapley() -> [f64; 2] {
    let s = f64::sqrt;
    [(1.0 + s(14.0) - s(13.0)) / 2.0, (s(14.0) + s(13.0) - 1.0) / 2.0]
}

/// The three-player game worth 1 for any two or more players.
pub fn majority3() -> TabularGame {
    TabularGame::new(3, vec![0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0]).unwrap()
}

/// Game with players `i` and `j` made interchangeable by averaging over the swap.
pub fn symmetrize(g: &TabularGame, i: usize, j: usize) -> TabularGame {
    let swap = |b: usize| {
        let (bi, bj) = (b >> i & 1, b >> j & 1);
        (b & !(1 << i) & !(1 << j)) | bj << i | bi << j
    };
    let values = (0..1usize << g.n()).map(|b| 0.5 * (g[b] + g[swap(b)])).collect();
    TabularGame::new(g.n(), values).unwrap()
}

/// Game on `n` players that ignores player `d`.
pub fn with_dummy(g: &TabularGame, d: usize) -> TabularGame {
    let n = g.n() + 1;
    TabularGame::from_fn(n, |c| {
        let b = c.bits() as usize;
        let low = b & ((1 << d) - 1);
        let high = (b >> (d + 1)) << d;
        g[low | high]
    })
    .unwrap()
}
