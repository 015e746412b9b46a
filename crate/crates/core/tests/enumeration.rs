mod common;

use common::all_biases;
use pbias_core::oracle::{character_sum, enumerate_boolean, enumerate_monotone};
use pbias_core::reduction::a_factor;
use pbias_core::{is_monotone, SubsetMask};
use std::collections::HashSet;

#[test]
fn dedekind_counts() {
    let expected = [2, 3, 6, 20, 168, 7581];
    for (n, &count) in expected.iter().enumerate() {
        let tables: HashSet<u64> = enumerate_monotone(n as u32).unwrap().map(|f| f.truth_bits().unwrap()).collect();
        assert_eq!(tables.len(), count, "n = {n}");
        assert_eq!(enumerate_monotone(n as u32).unwrap().len(), count);
    }
}

#[test]
fn monotone_stream_equals_filtered_boolean_stream() {
    for n in 0..=4 {
        let filtered: HashSet<u64> =
            enumerate_boolean(n).unwrap().filter(is_monotone).map(|f| f.truth_bits().unwrap()).collect();
        let streamed: HashSet<u64> = enumerate_monotone(n).unwrap().map(|f| f.truth_bits().unwrap()).collect();
        assert_eq!(filtered, streamed);
    }
}

#[test]
fn character_sums_on_full_grid() {
    for b in all_biases(6) {
        for s in 1..1u64 << b.m() {
            let r = character_sum(SubsetMask(s), b).unwrap();
            assert!(r.all_ok(), "t={} m={} S={s:b}: {r:?}", b.t(), b.m());
            let top = 64 - s.leading_zeros();
            assert_eq!(r.expected_magnitude, a_factor(top, b));
        }
    }
}
