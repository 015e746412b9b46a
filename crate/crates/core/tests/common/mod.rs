#![allow(dead_code)]

use pbias_core::{CubeFunction, DyadicBias};
use proptest::prelude::*;

/// Every dyadic bias with `m <= m_max`.
pub fn all_biases(m_max: u32) -> Vec<DyadicBias> {
    (1..=m_max)
        .flat_map(|m| (1..=1u64 << (m - 1)).map(move |t| DyadicBias::new(t, m).unwrap()))
        .collect()
}

pub fn bias_strategy(m_max: u32) -> impl Strategy<Value = DyadicBias> {
    (1..=m_max).prop_flat_map(|m| (1..=1u64 << (m - 1)).prop_map(move |t| DyadicBias::new(t, m).unwrap()))
}

pub fn real_function(n: u32) -> impl Strategy<Value = CubeFunction> {
    prop::collection::vec(-1.0f64..1.0, 1usize << n).prop_map(move |v| CubeFunction::from_values(n, v).unwrap())
}

pub fn boolean_function(n: u32) -> impl Strategy<Value = CubeFunction> {
    prop::collection::vec(any::<bool>(), 1usize << n)
        .prop_map(move |v| CubeFunction::from_values(n, v.into_iter().map(f64::from).collect()).unwrap())
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
