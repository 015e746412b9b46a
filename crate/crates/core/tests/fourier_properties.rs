mod common;

use common::{all_biases, bias_strategy, boolean_function, max_abs_diff, real_function};
use pbias_core::oracle::{enumerate_boolean, naive_coefficient, InstanceKind, InstanceStream};
use pbias_core::{character, dual_function, inverse_transform, q_norm, transform, Measure, PointMask, SubsetMask};
use proptest::prelude::*;

proptest! {
    #[test]
    fn round_trip_n6(f in real_function(6)) {
        let b = pbias_core::DyadicBias::new(3, 3).unwrap();
        let back = inverse_transform(&transform(&f, b));
        prop_assert!(max_abs_diff(back.values(), f.values()) < 1e-12);
    }

    #[test]
    fn round_trip_any_bias(b in bias_strategy(6), n in 0u32..=7, seed in any::<u64>()) {
        let f = pbias_core::oracle::random_instance(InstanceKind::RandomReal, n, seed).unwrap();
        let back = inverse_transform(&transform(&f, b));
        prop_assert!(max_abs_diff(back.values(), f.values()) < 1e-10);
    }

    #[test]
    fn parseval(f in real_function(5), b in bias_strategy(5)) {
        let s = transform(&f, b);
        let norm = q_norm(&f, 2.0, b).unwrap();
        prop_assert!((s.total_weight() - norm * norm).abs() < 1e-12);
    }

    #[test]
    fn linearity(f in real_function(4), g in real_function(4), a in -3.0f64..3.0, c in -3.0f64..3.0, b in bias_strategy(4)) {
        let combo = transform(&f.combine(a, &g, c).unwrap(), b);
        let (sf, sg) = (transform(&f, b), transform(&g, b));
        let expected: Vec<f64> = sf.coeffs().iter().zip(sg.coeffs()).map(|(x, y)| a * x + c * y).collect();
        prop_assert!(max_abs_diff(combo.coeffs(), &expected) < 1e-12);
    }

    #[test]
    fn dual_flips_signs(f in real_function(4), b in bias_strategy(4)) {
        let s = transform(&f, b);
        let dual = transform(&dual_function(&f), Measure::Real(1.0 - b.p()));
        for (k, (x, y)) in s.coeffs().iter().zip(dual.coeffs()).enumerate() {
            let sign = if k.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((sign * x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn norms_increase_with_q(f in real_function(4), b in bias_strategy(4)) {
        let qs = [1.0, 1.5, 2.0, 3.0, 4.0, 6.5];
        let norms: Vec<f64> = qs.iter().map(|&q| q_norm(&f, q, b).unwrap()).collect();
        for w in norms.windows(2) {
            prop_assert!(w[0] <= w[1] + 1e-12);
        }
    }

    #[test]
    fn noise_contracts(f in real_function(4), b in bias_strategy(4), delta in 0.0f64..=1.0) {
        let s = transform(&f, b);
        prop_assert!(s.noise(delta).total_weight() <= s.total_weight() + 1e-12);
    }

    #[test]
    fn boolean_weight_is_mean(f in boolean_function(5), b in bias_strategy(4)) {
        let s = transform(&f, b);
        prop_assert!((s.total_weight() - f.expectation(b)).abs() < 1e-12);
    }
}

#[test]
fn characters_are_orthonormal() {
    for b in all_biases(4) {
        let w = pbias_core::function::point_weights(3, b.into());
        for s in 0..8u64 {
            for r in 0..8u64 {
                let inner: f64 = (0..8u64)
                    .map(|x| w[x as usize] * character(SubsetMask(s), PointMask(x), b) * character(SubsetMask(r), PointMask(x), b))
                    .sum();
                let expected = if s == r { 1.0 } else { 0.0 };
                assert!((inner - expected).abs() < 1e-12, "S={s} R={r} p={}", b.p());
            }
        }
    }
}

#[test]
fn transform_matches_naive_sums() {
    for b in all_biases(4) {
        for n in 0..=3 {
            let exhaustive = enumerate_boolean(n).unwrap();
            let random = InstanceStream::random(InstanceKind::RandomReal, n, 0x5eed + u64::from(n), 100).unwrap();
            for f in exhaustive.chain(random) {
                let fast = transform(&f, b);
                for s in 0..1usize << n {
                    let slow = naive_coefficient(&f, SubsetMask::from(s), b);
                    assert!((fast.coeffs()[s] - slow).abs() < 1e-10);
                }
            }
        }
    }
}
