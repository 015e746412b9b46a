//! Brute-force ground truth, written without the fast transform or the
//! reduction so that agreement with them means something.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bias::{DyadicBias, Measure};
use crate::error::{Error, Result};
use crate::function::CubeFunction;
use crate::mask::SubsetMask;
use crate::math;

/// Largest `n` for the exhaustive Boolean stream (2^16 functions).
pub const BOOLEAN_ENUMERATION_CAP: u32 = 4;
/// Largest `n` for the exhaustive monotone stream (7581 functions).
pub const MONOTONE_ENUMERATION_CAP: u32 = 5;

/// `E_mu[f u_S]` as a plain `2^n`-term sum.
pub fn naive_coefficient(f: &CubeFunction, s: SubsetMask, measure: impl Into<Measure>) -> f64 {
    let p = measure.into().p();
    let q = 1.0 - p;
    let n = f.n() as usize;
    let mut total = 0.0;
    for (x, &value) in f.values().iter().enumerate() {
        let mut weight = 1.0;
        let mut chi = 1.0;
        for i in 0..n {
            let one = (x >> i) & 1 == 1;
            weight *= if one { p } else { q };
            if (s.bits() >> i) & 1 == 1 {
                chi *= if one { -math::sqrt(q / p) } else { math::sqrt(p / q) };
            }
        }
        total += weight * value * chi;
    }
    total
}

/// `sum u_S(y)` over the `t` blocks `y in {0,1}^m` with `Bin(y) >= 2^m - t`,
/// with uniform (`+-1`) characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharacterSum {
    pub value: i64,
    /// `a_{max S}(t)`.
    pub expected_magnitude: u64,
    pub magnitude_ok: bool,
    /// `value == (-1)^{|S|} t`, checked only when `max S <= L`.
    pub signed_ok: Option<bool>,
}

impl CharacterSum {
    pub fn all_ok(&self) -> bool {
        self.magnitude_ok && self.signed_ok != Some(false)
    }
}

/// `s` is a subset of the block positions `1..=m`.
pub fn character_sum(s: SubsetMask, bias: DyadicBias) -> Result<CharacterSum> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    let (t, m) = (bias.t(), bias.m());
    if !s.fits(m) {
        return Err(Error::DimensionMismatch("subset is not inside the block"));
    }
    let size = 1u64 << m;
    let mut value = 0i64;
    for y in 0..size {
        // position j carries weight 2^{m-j}
        let bin: u64 = (1..=m).filter(|&j| (y >> (j - 1)) & 1 == 1).map(|j| 1u64 << (m - j)).sum();
        if bin + t >= size {
            let odd = (y & s.bits()).count_ones() % 2 == 1;
            value += if odd { -1 } else { 1 };
        }
    }
    let top = 64 - s.bits().leading_zeros();
    let modulus = 1u64 << (m - top + 1);
    let expected_magnitude = (t % modulus).min(modulus - t % modulus);
    // L = largest l with t 2^l <= 2^m
    let mut l = 0;
    while (t << (l + 1)) <= size {
        l += 1;
    }
    let signed_ok = (top <= l).then(|| {
        let sign = if s.weight() % 2 == 0 { 1 } else { -1 };
        value == sign * t as i64
    });
    Ok(CharacterSum {
        value,
        expected_magnitude,
        magnitude_ok: value.unsigned_abs() == expected_magnitude,
        signed_ok,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    ExhaustiveBoolean,
    ExhaustiveMonotone,
    RandomBoolean,
    RandomReal,
}

/// A replayable sequence of functions on `{0,1}^n`.
#[derive(Clone, Debug)]
pub struct InstanceStream {
    kind: InstanceKind,
    n: u32,
    seed: u64,
    count: u64,
    next: u64,
    rng: ChaCha8Rng,
    monotone: Vec<u64>,
}

impl InstanceStream {
    pub fn kind(&self) -> InstanceKind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Total number of instances the stream yields.
    pub fn total(&self) -> u64 {
        self.count
    }

    /// A random stream; every instance is drawn from one ChaCha8 generator seeded with `seed`.
    pub fn random(kind: InstanceKind, n: u32, seed: u64, count: u64) -> Result<Self> {
        if matches!(kind, InstanceKind::ExhaustiveBoolean | InstanceKind::ExhaustiveMonotone) {
            return Err(Error::InvalidParameter("exhaustive streams are built by enumerate_boolean / enumerate_monotone"));
        }
        if n > crate::function::MAX_DIMENSION {
            return Err(Error::DimensionTooLarge { n, max: crate::function::MAX_DIMENSION });
        }
        Ok(Self::build(kind, n, seed, count, Vec::new()))
    }

    fn build(kind: InstanceKind, n: u32, seed: u64, count: u64, monotone: Vec<u64>) -> Self {
        Self { kind, n, seed, count, next: 0, rng: ChaCha8Rng::seed_from_u64(seed), monotone }
    }
}

impl Iterator for InstanceStream {
    type Item = CubeFunction;

    fn next(&mut self) -> Option<CubeFunction> {
        if self.next >= self.count {
            return None;
        }
        let k = self.next;
        self.next += 1;
        let f = match self.kind {
            InstanceKind::ExhaustiveBoolean => CubeFunction::from_truth_bits(self.n, k),
            InstanceKind::ExhaustiveMonotone => CubeFunction::from_truth_bits(self.n, self.monotone[k as usize]),
            InstanceKind::RandomBoolean | InstanceKind::RandomReal => Ok(draw(self.kind, self.n, &mut self.rng)),
        };
        Some(f.expect("stream dimensions are validated on construction"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.count - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for InstanceStream {}

/// Every Boolean function on `n <= 4` coordinates, by truth table.
pub fn enumerate_boolean(n: u32) -> Result<InstanceStream> {
    if n > BOOLEAN_ENUMERATION_CAP {
        return Err(Error::EnumerationCap { n, cap: BOOLEAN_ENUMERATION_CAP });
    }
    Ok(InstanceStream::build(InstanceKind::ExhaustiveBoolean, n, 0, 1u64 << (1u32 << n), Vec::new()))
}

/// Every monotone Boolean function on `n <= 5` coordinates.
pub fn enumerate_monotone(n: u32) -> Result<InstanceStream> {
    if n > MONOTONE_ENUMERATION_CAP {
        return Err(Error::EnumerationCap { n, cap: MONOTONE_ENUMERATION_CAP });
    }
    let tables = monotone_tables(n);
    Ok(InstanceStream::build(InstanceKind::ExhaustiveMonotone, n, 0, tables.len() as u64, tables))
}

// f is monotone iff f|_{x_n = 0} <= f|_{x_n = 1} pointwise and both halves are monotone.
fn monotone_tables(n: u32) -> Vec<u64> {
    if n == 0 {
        return alloc::vec![0, 1];
    }
    let half = monotone_tables(n - 1);
    let shift = 1u32 << (n - 1);
    let mut out = Vec::new();
    for &low in &half {
        for &high in &half {
            if low & !high == 0 {
                out.push(low | high << shift);
            }
        }
    }
    out
}

/// One random function; the same `(kind, n, seed)` always gives the same table.
pub fn random_instance(kind: InstanceKind, n: u32, seed: u64) -> Result<CubeFunction> {
    let mut stream = InstanceStream::random(kind, n, seed, 1)?;
    Ok(stream.next().expect("stream has one instance"))
}

fn draw(kind: InstanceKind, n: u32, rng: &mut ChaCha8Rng) -> CubeFunction {
    let len = 1usize << n;
    let values = match kind {
        InstanceKind::RandomBoolean => (0..len).map(|_| if rng.random::<bool>() { 1.0 } else { 0.0 }).collect(),
        _ => (0..len).map(|_| rng.random_range(-1.0..=1.0)).collect(),
    };
    CubeFunction::from_values(n, values).expect("random values are finite")
}
