mod common;

use common::{brute_colorings, canonical_specs, random_perm, random_signature, random_spec};
use itertools::Itertools;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use theta_dp::arith::pair_counts;
use theta_dp::closed_forms::{
    amgm_bound, chromatic_poly_cycle, chromatic_poly_theta, dp_theta3, dual_dp_generalized,
};
use theta_dp::optimizer::{maximize, minimize, SearchOptions};
use theta_dp::perm::all_perms;
use theta_dp::rearrangement::{
    fg_minimum, fg_minimum_materialized, h_equality_check, h_paired_sum, h_paired_sum_materialized,
    Parity, StepVector,
};
use theta_dp::signature::{build_cover, evaluate_signature, Signature};
use theta_dp::theta::ThetaSpec;

fn opts() -> SearchOptions {
    SearchOptions::default()
}

#[test]
fn chromatic_polynomial_matches_brute_force_colorings() {
    for n in 2..=3 {
        for spec in canonical_specs(n, 4) {
            let g = spec.vertex_layout().graph;
            for m in 1..=4u32 {
                let expected = brute_colorings(&g, m as usize);
                assert_eq!(
                    chromatic_poly_theta(&spec, m).unwrap(),
                    BigUint::from(expected),
                    "{spec} m={m}"
                );
            }
        }
    }
}

#[test]
fn identity_signature_realizes_chromatic_polynomial() {
    for n in 2..=4 {
        for spec in canonical_specs(n, 3) {
            for m in 2..=4u32 {
                let sig = Signature::identity(n, m as usize);
                assert_eq!(
                    evaluate_signature(&spec, m, &sig).unwrap(),
                    chromatic_poly_theta(&spec, m).unwrap()
                );
            }
        }
    }
}

#[test]
fn deleting_cross_edges_never_decreases_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let spec = random_spec(&mut rng, 8);
        let sig = random_signature(&mut rng, spec.n(), 3);
        let full = build_cover(&spec, 3, &sig).unwrap();
        let before = full.count_transversals();
        for drop in 0..full.cross.len().min(6) {
            let mut partial = full.clone();
            partial.cross.remove(drop * full.cross.len() / 6);
            assert!(!partial.is_full());
            assert!(partial.validate().is_empty());
            assert!(partial.count_transversals() >= before);
        }
    }
}

/// Minimum and maximum of `Σ_{i,j} Π_k count` over every signature, by
/// building each cover and counting its transversals.
fn brute_extremes(spec: &ThetaSpec, m: u32) -> (BigUint, BigUint) {
    let perms = all_perms(m as usize);
    let mut values = Vec::new();
    for rest in (1..spec.n())
        .map(|_| perms.iter())
        .multi_cartesian_product()
    {
        let mut taus = vec![perms[0].clone()];
        taus.extend(rest.into_iter().cloned());
        let cover = build_cover(spec, m, &Signature::new(taus).unwrap()).unwrap();
        values.push(cover.count_transversals());
    }
    let min = values.iter().min().unwrap().clone();
    let max = values.iter().max().unwrap().clone();
    (min, max)
}

#[test]
fn cycle_extremes_against_transversal_brute_force() {
    for len in 3..=6u32 {
        for l1 in 1..=len / 2 {
            let spec = ThetaSpec::canonicalize(&[l1, len - l1]).unwrap();
            let m = 3u32;
            let (min, max) = brute_extremes(&spec, m);
            let base = BigUint::from(m - 1).pow(len);
            let expected_min = if len % 2 == 1 {
                chromatic_poly_cycle(len, m)
            } else {
                &base - 1u32
            };
            let expected_max = if len % 2 == 0 {
                chromatic_poly_cycle(len, m)
            } else {
                &base + 1u32
            };
            assert_eq!(min, expected_min, "{spec}");
            assert_eq!(max, expected_max, "{spec}");
            assert_eq!(minimize(&spec, m, &opts()).unwrap().optimum, min);
            assert_eq!(maximize(&spec, m, &opts()).unwrap().optimum, max);
        }
    }
}

#[test]
fn small_theta3_extremes_against_transversal_brute_force() {
    for spec in canonical_specs(3, 3) {
        let (min, max) = brute_extremes(&spec, 3);
        assert_eq!(dp_theta3(&spec, 3).unwrap().value, min, "{spec}");
        assert_eq!(dual_dp_generalized(&spec, 3).unwrap().value, max, "{spec}");
    }
}

#[test]
fn bound_chain_on_small_specs() {
    for n in 2..=4 {
        for spec in canonical_specs(n, 3) {
            for m in 3..=4u32 {
                let min = minimize(&spec, m, &opts()).unwrap().optimum;
                let p = chromatic_poly_theta(&spec, m).unwrap();
                let dual = dual_dp_generalized(&spec, m).unwrap().value;
                let bound = amgm_bound(&spec, m).unwrap();
                assert!(bound <= min && min <= p && p <= dual, "{spec} m={m}");
                if n == 3 {
                    let closed = dp_theta3(&spec, m).unwrap();
                    assert_eq!(closed.value, min, "{spec} m={m}");
                    if spec.t() == 3 {
                        assert_eq!(closed.value, p);
                    }
                }
            }
        }
    }
}

#[test]
fn pair_count_step_vectors_reproduce_theta3_formula() {
    for spec in canonical_specs(3, 5) {
        for m in 3..=4u32 {
            let xs: Vec<StepVector> = spec
                .lengths()
                .iter()
                .map(|&l| {
                    let x = StepVector::from_pair_count(&pair_counts(l, m).unwrap()).unwrap();
                    let want = if l % 2 == 0 {
                        Parity::Even
                    } else {
                        Parity::Odd
                    };
                    assert_eq!(x.parity(), want, "l={l} m={m}");
                    x
                })
                .collect();
            let (_, h) = h_paired_sum(&xs[0], &xs[1], &xs[2]).unwrap();
            let closed = dp_theta3(&spec, m).unwrap().value;
            assert_eq!(BigUint::from(h), closed, "{spec} m={m}");
        }
    }
}

/// Minimum of `Σ_j x1_j · y_j · z_j` over all rearrangements `y` of `x2`
/// and `z` of `x3`. Only the positions receiving the larger value matter,
/// so this ranges over subsets rather than permutations.
fn placement_minimum(x1: &StepVector, x2: &StepVector, x3: &StepVector) -> u128 {
    let e1 = x1.expand();
    let size = e1.len();
    let high = |x: &StepVector| size - x.low_count();
    let mut best = u128::MAX;
    for a in (0..size).combinations(high(x2)) {
        for b in (0..size).combinations(high(x3)) {
            let mut y = vec![x2.base(); size];
            let mut z = vec![x3.base(); size];
            a.iter().for_each(|&j| y[j] += 1);
            b.iter().for_each(|&j| z[j] += 1);
            let sum = (0..size).map(|j| u128::from(e1[j] * y[j] * z[j])).sum();
            best = best.min(sum);
        }
    }
    best
}

#[test]
fn fg_pairing_is_the_placement_minimum() {
    let parities = [Parity::Odd, Parity::Even];
    for (p1, p2, p3) in itertools::iproduct!(parities, parities, parities) {
        for (b1, b2, b3) in itertools::iproduct!(0..=2u64, 0..=2u64, 0..=2u64) {
            if b1 > b2 || b1 > b3 {
                continue;
            }
            let x1 = StepVector::new(3, b1, p1).unwrap();
            let x2 = StepVector::new(3, b2, p2).unwrap();
            let x3 = StepVector::new(3, b3, p3).unwrap();
            let fg = fg_minimum(&x1, &x2, &x3).unwrap();
            assert_eq!(fg, fg_minimum_materialized(&x1, &x2, &x3).unwrap());
            assert_eq!(fg, placement_minimum(&x1, &x2, &x3), "{x1:?} {x2:?} {x3:?}");
            let v = h_equality_check(&x1, &x2, &x3).unwrap();
            assert!(v.equal, "{v:?}");
            assert_eq!(h_paired_sum_materialized(&x1, &x2, &x3).unwrap(), v.h_sum);
        }
    }
}

#[test]
fn fg_minimum_with_zero_bases() {
    let x1 = StepVector::new(3, 0, Parity::Odd).unwrap();
    let x2 = StepVector::new(3, 0, Parity::Even).unwrap();
    let x3 = StepVector::new(3, 0, Parity::Even).unwrap();
    // x1 vanishes on three positions and x2 on six, so every product can be zero
    assert_eq!(placement_minimum(&x1, &x2, &x3), 0);
    assert_eq!(fg_minimum(&x1, &x2, &x3).unwrap(), 0);
}

fn parity_strategy() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Odd), Just(Parity::Even)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signature_value_matches_transversal_count(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_spec(&mut rng, 10);
        let sig = random_signature(&mut rng, spec.n(), 3);
        let cover = build_cover(&spec, 3, &sig).unwrap();
        prop_assert!(cover.validate().is_empty());
        prop_assert_eq!(evaluate_signature(&spec, 3, &sig).unwrap(), cover.count_transversals());
    }

    #[test]
    fn random_signatures_lie_between_extremes(seed in any::<u64>(), m in 3u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = random_spec(&mut rng, 14);
        let min = minimize(&spec, m, &opts()).unwrap().optimum;
        let max = maximize(&spec, m, &opts()).unwrap().optimum;
        let p = chromatic_poly_theta(&spec, m).unwrap();
        prop_assert!(min <= p && p <= max);
        prop_assert!(amgm_bound(&spec, m).unwrap() <= min);
        for _ in 0..10 {
            let sig = random_signature(&mut rng, spec.n(), m as usize);
            let v = evaluate_signature(&spec, m, &sig).unwrap();
            prop_assert!(min <= v && v <= max);
        }
    }

    #[test]
    fn fg_pairing_beats_random_pairings(
        m in 3u32..=6,
        b1 in 0u64..=10,
        d2 in 0u64..=10,
        d3 in 0u64..=10,
        ps in (parity_strategy(), parity_strategy(), parity_strategy()),
        seed in any::<u64>(),
    ) {
        let x1 = StepVector::new(m, b1, ps.0).unwrap();
        let x2 = StepVector::new(m, b1 + d2, ps.1).unwrap();
        let x3 = StepVector::new(m, b1 + d3, ps.2).unwrap();
        let fg = fg_minimum(&x1, &x2, &x3).unwrap();
        prop_assert_eq!(fg, fg_minimum_materialized(&x1, &x2, &x3).unwrap());
        let v = h_equality_check(&x1, &x2, &x3).unwrap();
        prop_assert!(v.equal);
        prop_assert_eq!(h_paired_sum_materialized(&x1, &x2, &x3).unwrap(), v.h_sum);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let size = (m * m) as usize;
        for _ in 0..20 {
            let s1 = random_perm(&mut rng, size);
            let s2 = random_perm(&mut rng, size);
            prop_assert!(fg <= theta_dp::rearrangement::triple_sum(&x1, &x2, &x3, &s1, &s2).unwrap());
        }
    }
}
