mod common;

use coalloc::coalition::Coalition;
use coalloc::game::{
    find_dummies, fuse, in_anticore, in_core, modularity, satisfies_fusion_property,
    shapley_exact, shapley_sampled, symmetric_pairs, PermutationSampleConfig, TabularGame,
};
use coalloc::variance::{sd_game, variance_game};
use common::*;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn subset_formula_matches_permutation_enumeration() {
    let mut r = rng(1);
    for n in 1..=8 {
        for _ in 0..5 {
            let g = random_game(n, &mut r);
            let exact = shapley_exact(&g);
            let oracle = shapley_by_permutations(&g);
            for i in 0..n {
                assert!((exact[i] - oracle[i]).abs() <= 1e-10, "n={n} i={i}");
            }
        }
    }
}

#[test]
fn diag_149_sd_game_matches_radicals() {
    let phi = shapley_exact(&sd_game(&diag_149()).unwrap());
    for (got, want) in phi.as_slice().iter().zip(diag_149_sd_shapley()) {
        assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
    }
}

#[test]
fn sd_fusion_of_last_two_players() {
    let g = sd_game(&diag_149()).unwrap();
    let merged = Coalition::from_players(&[1, 2], 3).unwrap();
    let f = fuse(&g, merged).unwrap();
    assert_eq!(f.values(), &[0.0, 1.0, 13f64.sqrt(), 14f64.sqrt()]);
    let phi = shapley_exact(&f);
    for (got, want) in phi.as_slice().iter().zip(diag_1_13_sd_shapley()) {
        assert!((got - want).abs() <= 1e-12);
    }
    assert!(!satisfies_fusion_property(&g, merged).unwrap());
}

#[test]
fn variance_games_satisfy_fusion_for_every_coalition() {
    let mut r = rng(2);
    for n in 2..=6 {
        let g = variance_game(&random_psd(n, &mut r)).unwrap();
        for bits in 1..(1u64 << n) {
            let c = Coalition::new(bits, n).unwrap();
            assert!(satisfies_fusion_property(&g, c).unwrap(), "n={n} J={c}");
        }
    }
}

#[test]
fn equal_rows_are_symmetric() {
    let cov = coalloc::CovarianceMatrix::diagonal(&[1.0, 1.0, 9.0]).unwrap();
    let g = variance_game(&cov).unwrap();
    assert_eq!(symmetric_pairs(&g), vec![(0, 1)]);
    let phi = shapley_exact(&g);
    assert_eq!(phi[0], phi[1]);
}

#[test]
fn majority_game_classification_and_core() {
    let g = majority3();
    assert_eq!(symmetric_pairs(&g).len(), 3);
    let phi = shapley_exact(&g);
    assert!(!in_core(&g, &coalloc::Allocation::new(vec![1.0, 0.0, 0.0])).unwrap());
    // the core is empty for this game, so the Shapley value is not in it
    assert!(!in_core(&g, &phi).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn efficiency(seed in any::<u64>(), n in 1usize..=8) {
        let g = random_game(n, &mut rng(seed));
        let phi = shapley_exact(&g);
        prop_assert!((phi.total() - g.grand_value()).abs() <= 1e-9 * g.scale());
    }

    #[test]
    fn dummy_axiom(seed in any::<u64>(), n in 1usize..=7, d in 0usize..8) {
        let base = random_game(n, &mut rng(seed));
        let d = d % (n + 1);
        let g = with_dummy(&base, d);
        let dummies = find_dummies(&g);
        prop_assert!(dummies.contains(&d));
        let phi = shapley_exact(&g);
        for &p in &dummies {
            prop_assert!(phi[p].abs() <= 1e-9 * g.scale());
        }
    }

    #[test]
    fn symmetry_axiom(seed in any::<u64>(), n in 2usize..=8, i in 0usize..8, j in 0usize..8) {
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let g = symmetrize(&random_game(n, &mut rng(seed)), i, j);
        let pairs = symmetric_pairs(&g);
        prop_assert!(pairs.contains(&(i.min(j), i.max(j))));
        let phi = shapley_exact(&g);
        for &(a, b) in &pairs {
            prop_assert!((phi[a] - phi[b]).abs() <= 1e-9 * g.scale());
        }
    }

    #[test]
    fn linearity(seed in any::<u64>(), n in 1usize..=8, alpha in -10.0f64..10.0, beta in -10.0f64..10.0) {
        let mut r = rng(seed);
        let (g, h) = (random_game(n, &mut r), random_game(n, &mut r));
        let mix = g.combine(alpha, &h, beta).unwrap();
        let lhs = shapley_exact(&mix);
        let (pg, ph) = (shapley_exact(&g), shapley_exact(&h));
        for k in 0..n {
            prop_assert!((lhs[k] - (alpha * pg[k] + beta * ph[k])).abs() <= 1e-8 * mix.scale());
        }
    }

    #[test]
    fn json_round_trip_is_exact(seed in any::<u64>(), n in 1usize..=6) {
        let g = random_game(n, &mut rng(seed));
        let back = TabularGame::from_json(&g.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn modular_classes_contain_shapley(seed in any::<u64>(), n in 2usize..=7) {
        // v(J) = f(Σ_{i∈J} w_i) is supermodular for convex f, submodular for concave f
        let mut r = rng(seed);
        let w: Vec<f64> = (0..n).map(|_| r.random_range(0.1..3.0)).collect();
        let sum = |c: Coalition| c.players().map(|i| w[i]).sum::<f64>();
        let convex = TabularGame::from_fn(n, |c| sum(c).powi(2)).unwrap();
        let concave = TabularGame::from_fn(n, |c| sum(c).sqrt()).unwrap();
        let m = modularity(&convex).unwrap();
        prop_assert!(m.supermodular);
        prop_assert!(in_core(&convex, &shapley_exact(&convex)).unwrap());
        let m = modularity(&concave).unwrap();
        prop_assert!(m.submodular);
        prop_assert!(in_anticore(&concave, &shapley_exact(&concave)).unwrap());
    }
}

/// `additive + sign * Σ_T a_T u_T` with `a_T >= 0` over random coalitions `T`
/// of size at least two, where `u_T(J) = 1` iff `T ⊆ J`.
fn unanimity_mix<R: Rng>(n: usize, sign: f64, r: &mut R) -> TabularGame {
    let w: Vec<f64> = (0..n).map(|_| r.random_range(-5.0..5.0)).collect();
    let terms: Vec<(u64, f64)> = (0..2 * n)
        .map(|_| (r.random_range(0..1u64 << n), r.random_range(0.0..3.0)))
        .filter(|(t, _)| t.count_ones() >= 2)
        .collect();
    TabularGame::from_fn(n, |c| {
        let additive: f64 = c.players().map(|i| w[i]).sum();
        let unanimity: f64 = terms.iter().filter(|(t, _)| c.bits() & t == *t).map(|(_, a)| a).sum();
        additive + sign * unanimity
    })
    .unwrap()
}

#[test]
fn classified_random_games_have_shapley_in_core_or_anticore() {
    let mut r = rng(3);
    for _ in 0..100 {
        let n = r.random_range(2..=8);
        let sup = unanimity_mix(n, 1.0, &mut r);
        assert!(modularity(&sup).unwrap().supermodular);
        assert!(in_core(&sup, &shapley_exact(&sup)).unwrap());
        let sub = unanimity_mix(n, -1.0, &mut r);
        assert!(modularity(&sub).unwrap().submodular);
        assert!(in_anticore(&sub, &shapley_exact(&sub)).unwrap());
    }
}

#[test]
fn sampled_error_shrinks_with_sample_count() {
    let mut r = rng(4);
    let mut monotone = 0;
    let trials = 100;
    for trial in 0..trials {
        let g = random_game(8, &mut r);
        let exact = shapley_exact(&g);
        let errors: Vec<f64> = [1_000u64, 10_000, 100_000]
            .iter()
            .map(|&m| {
                let cfg = PermutationSampleConfig::new(m, 1000 + trial).unwrap();
                shapley_sampled(&g, cfg).max_gap(&exact)
            })
            .collect();
        if errors[0] >= errors[1] && errors[1] >= errors[2] {
            monotone += 1;
        }
    }
    assert!(monotone >= 95, "monotone in only {monotone}/{trials} trials");
}

#[test]
fn sampled_efficiency_per_draw() {
    let g = random_game(6, &mut rng(5));
    let phi = shapley_sampled(&g, PermutationSampleConfig::new(3_000, 9).unwrap());
    assert!((phi.total() - g.grand_value()).abs() <= 1e-9 * g.scale());
}
