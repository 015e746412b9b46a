//! Measure parameters: dyadic biases `p = t / 2^m` and general product measures.

use core::fmt;

use crate::error::{Error, Result};

/// Largest block width accepted by [`DyadicBias`]. Block values must fit a `u64`.
pub const MAX_WIDTH: u32 = 62;

/// A dyadic bias `p = t / 2^m` with `1 <= t <= 2^(m-1)`.
///
/// `t` and `m` are the source of truth and the fraction is never reduced:
/// `(t=2, m=2)` and `(t=1, m=1)` both mean `p = 1/2` but define different
/// reductions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DyadicBias {
    t: u64,
    m: u32,
}

impl DyadicBias {
    pub fn new(t: u64, m: u32) -> Result<Self> {
        if m == 0 || m > MAX_WIDTH || t == 0 || t > 1u64 << (m - 1) {
            return Err(Error::InvalidBias { t, m });
        }
        Ok(Self { t, m })
    }

    /// `p = 1/2` with blocks of width one; the reduction is then the identity.
    pub const fn uniform() -> Self {
        Self { t: 1, m: 1 }
    }

    #[inline]
    pub fn t(&self) -> u64 {
        self.t
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// `2^m`, the number of block values.
    #[inline]
    pub fn block_values(&self) -> u64 {
        1u64 << self.m
    }

    #[inline]
    pub fn p(&self) -> f64 {
        self.t as f64 / self.block_values() as f64
    }

    /// `L = floor(log2(1/p)) = m - ceil(log2 t)`, in integer arithmetic.
    #[inline]
    pub fn log_floor(&self) -> u32 {
        self.m - ceil_log2(self.t)
    }

    /// `p * L / (1 - p)`, the per-level factor of the level-weight bound.
    pub fn level_factor(&self) -> f64 {
        let p = self.p();
        p * f64::from(self.log_floor()) / (1.0 - p)
    }
}

impl fmt::Display for DyadicBias {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.t, self.m)
    }
}

fn ceil_log2(t: u64) -> u32 {
    if t <= 1 {
        0
    } else {
        64 - (t - 1).leading_zeros()
    }
}

/// The product measure a function or spectrum is taken against.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Measure {
    Uniform,
    Dyadic(DyadicBias),
    /// Any `p` in `(0, 1)`; this is what the dual function lives on when `p > 1/2`.
    Real(f64),
}

impl Measure {
    pub fn real(p: f64) -> Result<Self> {
        if p.is_finite() && p > 0.0 && p < 1.0 {
            Ok(Measure::Real(p))
        } else {
            Err(Error::InvalidProbability(p))
        }
    }

    #[inline]
    pub fn p(&self) -> f64 {
        match self {
            Measure::Uniform => 0.5,
            Measure::Dyadic(b) => b.p(),
            Measure::Real(p) => *p,
        }
    }

    /// `mu_{1-p}`.
    pub fn complement(&self) -> Measure {
        match self {
            Measure::Uniform => Measure::Uniform,
            other => Measure::Real(1.0 - other.p()),
        }
    }

    pub fn dyadic(&self) -> Option<DyadicBias> {
        match self {
            Measure::Dyadic(b) => Some(*b),
            Measure::Uniform => Some(DyadicBias::uniform()),
            Measure::Real(_) => None,
        }
    }

    /// Whether two measures have the same `p` (up to rounding).
    pub fn same_p(&self, other: &Measure) -> bool {
        (self.p() - other.p()).abs() <= 1e-15
    }
}

impl From<DyadicBias> for Measure {
    fn from(b: DyadicBias) -> Self {
        Measure::Dyadic(b)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Uniform => f.write_str("uniform"),
            Measure::Dyadic(b) => write!(f, "p={b}"),
            Measure::Real(p) => write!(f, "p={p}"),
        }
    }
}

/// Closest dyadic `t / 2^m` to `p_target` over `m <= m_max`.
///
/// Ties go to the smaller `m`, then the smaller `t`. Returns the bias and the
/// achieved error `|t/2^m - p_target|`.
pub fn dyadic_approx(p_target: f64, m_max: u32) -> Result<(DyadicBias, f64)> {
    if !(p_target.is_finite() && p_target > 0.0 && p_target <= 0.5) {
        return Err(Error::InvalidProbability(p_target));
    }
    if m_max == 0 || m_max > MAX_WIDTH {
        return Err(Error::InvalidParameter("m_max must be in 1..=62"));
    }
    let mut best: Option<(DyadicBias, f64)> = None;
    for m in 1..=m_max {
        let scale = (1u64 << m) as f64;
        let max_t = 1u64 << (m - 1);
        let centre = libm::floor(p_target * scale) as u64;
        for t in [centre, centre + 1] {
            let t = t.clamp(1, max_t);
            let err = (t as f64 / scale - p_target).abs();
            if best.map_or(true, |(_, e)| err < e) {
                best = Some((DyadicBias { t, m }, err));
            }
        }
    }
    Ok(best.expect("m_max >= 1"))
}
