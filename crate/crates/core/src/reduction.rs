//! The blow-up `g = Red(f)` from `({0,1}^n, mu_p)` to `({0,1}^{mn}, mu_{1/2})`
//! for `p = t / 2^m`, and the closed forms for the coefficients of `g`.
//!
//! Block `i` (1-based) occupies global coordinates `(i-1)m + 1 ..= im`. Inside
//! a block, coordinate 1 is the most significant bit of `Bin(y^i)`, so the
//! block whose bit `j - 1` holds `y^i_j` has value
//! `Bin(y^i) = sum_j 2^{m-j} y^i_j`. Then
//! `g(y) = f(h(y^1), ..., h(y^n))` with `h(y^i) = 1` iff `Bin(y^i) >= 2^m - t`.

use alloc::vec::Vec;

use crate::bias::{DyadicBias, Measure};
use crate::error::{Error, Result};
use crate::fourier::Spectrum;
use crate::function::CubeFunction;
use crate::mask::{PointMask, SubsetMask};
use crate::math;

/// Largest `mn` for which the dense table of `g` is built by default
/// (2^26 doubles, 512 MiB).
pub const DEFAULT_DENSE_CAP: u32 = 26;

/// `Bin(y)` for an `m`-bit block.
#[inline]
pub fn bin_value(block: u64, m: u32) -> u64 {
    debug_assert!((1..=62).contains(&m));
    (block & low_mask(m)).reverse_bits() >> (64 - m)
}

/// `h(y)`: 1 iff `Bin(y) >= 2^m - t`. Uniformly random blocks give 1 with probability `p`.
#[inline]
pub fn h_threshold(block: u64, bias: DyadicBias) -> bool {
    bin_value(block, bias.m()) >= bias.block_values() - bias.t()
}

#[inline]
fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// `g = Red(f)`, with a dense table when `mn` is under the cap.
#[derive(Clone, Debug)]
pub struct ReducedFunction {
    base: CubeFunction,
    bias: DyadicBias,
    dense: Option<CubeFunction>,
}

/// Dense reduction with [`DEFAULT_DENSE_CAP`].
pub fn reduce(f: &CubeFunction, bias: DyadicBias) -> Result<ReducedFunction> {
    reduce_with_cap(f, bias, DEFAULT_DENSE_CAP)
}

/// Dense reduction; refused when `mn > dense_cap`.
pub fn reduce_with_cap(f: &CubeFunction, bias: DyadicBias, dense_cap: u32) -> Result<ReducedFunction> {
    let dimension = f.n() * bias.m();
    if dimension > dense_cap {
        return Err(Error::DenseCapExceeded { dimension, cap: dense_cap });
    }
    let mut reduced = reduce_implicit(f, bias)?;
    reduced.dense = Some(reduced.build_dense()?);
    Ok(reduced)
}

/// Implicit reduction: only `y -> f(h(y^1), ..., h(y^n))` is available.
pub fn reduce_implicit(f: &CubeFunction, bias: DyadicBias) -> Result<ReducedFunction> {
    let dimension = u64::from(f.n()) * u64::from(bias.m());
    if dimension > 64 {
        return Err(Error::DimensionMismatch("mn must be at most 64 for point masks of g"));
    }
    Ok(ReducedFunction { base: f.clone(), bias, dense: None })
}

impl ReducedFunction {
    pub fn base(&self) -> &CubeFunction {
        &self.base
    }

    pub fn bias(&self) -> DyadicBias {
        self.bias
    }

    /// Number of blocks, `n`.
    pub fn blocks(&self) -> u32 {
        self.base.n()
    }

    /// Block width, `m`.
    pub fn width(&self) -> u32 {
        self.bias.m()
    }

    /// `mn`.
    pub fn dimension(&self) -> u32 {
        self.blocks() * self.width()
    }

    pub fn dense(&self) -> Option<&CubeFunction> {
        self.dense.as_ref()
    }

    pub fn require_dense(&self) -> Result<&CubeFunction> {
        self.dense.as_ref().ok_or(Error::NoDenseTable { dimension: self.dimension() })
    }

    pub fn into_dense(self) -> Option<CubeFunction> {
        self.dense
    }

    /// Block `i` (1-based) of `y`, within-block coordinate `j` at bit `j - 1`.
    #[inline]
    pub fn block(&self, y: PointMask, i: usize) -> u64 {
        let m = self.width();
        (y.bits() >> ((i as u32 - 1) * m)) & low_mask(m)
    }

    /// `(h(y^1), ..., h(y^n))`.
    pub fn collapse(&self, y: PointMask) -> PointMask {
        let x = (1..=self.blocks() as usize)
            .filter(|&i| h_threshold(self.block(y, i), self.bias))
            .fold(0u64, |acc, i| acc | 1 << (i - 1));
        PointMask(x)
    }

    /// `g(y)`.
    pub fn evaluate(&self, y: PointMask) -> f64 {
        match &self.dense {
            Some(g) => g.value(y),
            None => self.base.value(self.collapse(y)),
        }
    }

    fn build_dense(&self) -> Result<CubeFunction> {
        let (n, m) = (self.blocks(), self.width());
        let threshold = self.bias.block_values() - self.bias.t();
        let h: Vec<u8> = (0..1u64 << m).map(|b| u8::from(bin_value(b, m) >= threshold)).collect();
        let block_mask = low_mask(m) as usize;
        let f = self.base.values();
        let values = (0..1usize << (n * m))
            .map(|y| {
                let x = (0..n as usize).fold(0usize, |acc, i| acc | (h[(y >> (i * m as usize)) & block_mask] as usize) << i);
                f[x]
            })
            .collect();
        CubeFunction::from_values(n * m, values)
    }
}

/// `S` split into blocks: `S_i`, `s_i = max(S_i) - (i-1)m`, `S' = {i : S_i != {}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    width: u32,
    parts: Vec<u64>,
    support: SubsetMask,
}

impl BlockDecomposition {
    pub fn new(s: SubsetMask, blocks: u32, width: u32) -> Result<Self> {
        if u64::from(blocks) * u64::from(width) > 64 || !s.fits(blocks * width) {
            return Err(Error::DimensionMismatch("subset does not fit the reduced cube"));
        }
        let parts: Vec<u64> = (0..blocks).map(|i| (s.bits() >> (i * width)) & low_mask(width)).collect();
        let support = parts
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        Ok(Self { width, parts, support: SubsetMask(support) })
    }

    /// `S_i` as a within-block mask (1-based `i`).
    pub fn part(&self, i: usize) -> u64 {
        self.parts[i - 1]
    }

    /// `s_i`, the within-block position of the largest element of `S_i`.
    pub fn top(&self, i: usize) -> Option<u32> {
        let b = self.part(i);
        (b != 0).then(|| 64 - b.leading_zeros())
    }

    /// `S'`.
    pub fn support(&self) -> SubsetMask {
        self.support
    }

    /// `k = |S'|`.
    pub fn k(&self) -> u32 {
        self.support.weight()
    }

    /// `(i, s_i)` for every `i` in `S'`.
    pub fn tops(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.support.coords().map(move |i| (i, self.top(i).expect("i is in the support")))
    }

    pub fn width(&self) -> u32 {
        self.width
    }
}

/// `a_j(t) = min(t mod 2^{m-j+1}, 2^{m-j+1} - t mod 2^{m-j+1})`.
///
/// # Panics
/// If `j` is outside `1..=m`.
pub fn a_factor(j: u32, bias: DyadicBias) -> u64 {
    assert!((1..=bias.m()).contains(&j), "a_j(t) needs 1 <= j <= m");
    let modulus = 1u64 << (bias.m() - j + 1);
    let r = bias.t() % modulus;
    r.min(modulus - r)
}

/// Closed-form coefficient of `g` at `S`.
///
/// `magnitude` is always known. The signed value is known when every `s_i`
/// is at most `L = floor(log2(1/p))`, which covers all `S` when `t = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PredictedCoefficient {
    pub magnitude: f64,
    pub signed: Option<f64>,
}

impl PredictedCoefficient {
    pub fn sign_known(&self) -> bool {
        self.signed.is_some()
    }
}

/// Predicts `hat g(S)` from the `mu_p` spectrum of `f`.
pub fn predicted_coefficient(spec_f: &Spectrum, s: SubsetMask, bias: DyadicBias) -> Result<PredictedCoefficient> {
    check_spectrum(spec_f, bias)?;
    let decomposition = BlockDecomposition::new(s, spec_f.n(), bias.m())?;
    if s.is_empty() {
        let c = spec_f.coefficient(SubsetMask::EMPTY);
        return Ok(PredictedCoefficient { magnitude: c.abs(), signed: Some(c) });
    }
    let p = bias.p();
    let odds = math::sqrt(p / (1.0 - p));
    let k = decomposition.k();
    let f_coeff = spec_f.coefficient(decomposition.support());
    let t = bias.t() as f64;
    let block_factor: f64 = decomposition.tops().map(|(_, top)| a_factor(top, bias) as f64 / t).product();
    let magnitude = block_factor * math::powi(odds, k) * f_coeff.abs();
    let l = bias.log_floor();
    let signed = decomposition.tops().all(|(_, top)| top <= l).then(|| {
        let sign = if s.weight() % 2 == 0 { 1.0 } else { -1.0 };
        math::powi(-odds, k) * sign * f_coeff
    });
    Ok(PredictedCoefficient { magnitude, signed })
}

/// `((pL)/(1-p))^d sum_{|S|=d} hat f(S)^2`, the lower bound on level `d` of `g`.
pub fn level_weight_lower_bound(spec_f: &Spectrum, d: usize, bias: DyadicBias) -> Result<f64> {
    check_spectrum(spec_f, bias)?;
    if d > spec_f.n() as usize {
        return Err(Error::LevelOutOfRange { level: d, n: spec_f.n() });
    }
    Ok(math::powi(bias.level_factor(), d as u32) * spec_f.level_weight(d))
}

fn check_spectrum(spec_f: &Spectrum, bias: DyadicBias) -> Result<()> {
    let expected = Measure::from(bias);
    if !spec_f.measure().same_p(&expected) {
        return Err(Error::MeasureMismatch { spectrum: spec_f.measure().p(), expected: expected.p() });
    }
    Ok(())
}
