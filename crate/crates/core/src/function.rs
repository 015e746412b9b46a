//! Real-valued functions on `{0,1}^n` as dense truth tables.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use crate::bias::{DyadicBias, Measure};
use crate::error::{Error, Result};
use crate::mask::PointMask;

/// Largest dimension a dense table may have (2^30 doubles is 8 GiB).
pub const MAX_DIMENSION: u32 = 30;

/// `f: {0,1}^n -> R`, stored as `2^n` values indexed by [`PointMask`].
#[derive(Clone, Debug, PartialEq)]
pub struct CubeFunction {
    n: u32,
    values: Vec<f64>,
    boolean: bool,
}

impl CubeFunction {
    pub fn from_values(n: u32, values: Vec<f64>) -> Result<Self> {
        check_dimension(n)?;
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(Error::ValueCount { n, expected, got: values.len() });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { index });
        }
        let boolean = values.iter().all(|&v| v == 0.0 || v == 1.0);
        Ok(Self { n, values, boolean })
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(PointMask) -> f64) -> Result<Self> {
        check_dimension(n)?;
        let values = (0..1usize << n).map(|x| f(PointMask::from(x))).collect();
        Self::from_values(n, values)
    }

    /// Indicator of the set of points where `pred` holds.
    pub fn from_indicator(n: u32, mut pred: impl FnMut(PointMask) -> bool) -> Result<Self> {
        Self::from_fn(n, |x| if pred(x) { 1.0 } else { 0.0 })
    }

    /// Boolean function whose bit `k` of `table` is `f(point k)`; `n <= 6`.
    pub fn from_truth_bits(n: u32, table: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::DimensionTooLarge { n, max: 6 });
        }
        Self::from_indicator(n, |x| (table >> x.bits()) & 1 == 1)
    }

    pub fn constant(n: u32, c: f64) -> Result<Self> {
        check_dimension(n)?;
        Self::from_values(n, vec![c; 1usize << n])
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn value(&self, x: PointMask) -> f64 {
        self.values[x.index()]
    }

    /// True iff every value is exactly 0 or 1.
    #[inline]
    pub fn is_boolean(&self) -> bool {
        self.boolean
    }

    /// Truth table as bits (`n <= 6`, Boolean functions only).
    pub fn truth_bits(&self) -> Option<u64> {
        (self.boolean && self.n <= 6).then(|| {
            self.values
                .iter()
                .enumerate()
                .fold(0u64, |acc, (k, &v)| acc | (u64::from(v == 1.0) << k))
        })
    }

    /// `E_mu[f]`.
    pub fn expectation(&self, measure: impl Into<Measure>) -> f64 {
        let w = point_weights(self.n, measure.into());
        self.values.iter().zip(&w).map(|(v, w)| v * w).sum()
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: f64, other: &CubeFunction, beta: f64) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch("functions live on different cubes"));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| alpha * a + beta * b).collect();
        Self::from_values(self.n, values)
    }
}

fn check_dimension(n: u32) -> Result<()> {
    if n > MAX_DIMENSION {
        Err(Error::DimensionTooLarge { n, max: MAX_DIMENSION })
    } else {
        Ok(())
    }
}

/// `mu_p(x)` for every point, built up one coordinate at a time.
pub fn point_weights(n: u32, measure: Measure) -> Vec<f64> {
    let p = measure.p();
    let mut w = Vec::with_capacity(1usize << n);
    w.push(1.0);
    for _ in 0..n {
        let len = w.len();
        for k in 0..len {
            let base = w[k];
            w[k] = base * (1.0 - p);
            w.push(base * p);
        }
    }
    w
}

/// The dual function `f'(x) = f(1 - x_1, ..., 1 - x_n)`.
///
/// If `f` is analysed under `mu_p`, `f'` is analysed under `mu_{1-p}` and
/// `hat f'(S) = (-1)^{|S|} hat f(S)`.
pub fn dual_function(f: &CubeFunction) -> CubeFunction {
    let mut values = f.values.clone();
    // complementing every coordinate maps index k to 2^n - 1 - k
    values.reverse();
    CubeFunction { n: f.n, values, boolean: f.boolean }
}

/// Named Boolean families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `f(x) = x_coord`.
    Dictator { coord: usize },
    And,
    Or,
    Parity,
    /// `1` iff strictly more than half of the coordinates are 1.
    Majority,
    /// `1` iff `sum x_i > k`.
    Threshold { k: u32 },
    /// OR of ANDs over consecutive groups of `width` coordinates (the last
    /// group may be shorter).
    Tribes { width: u32 },
}

impl Family {
    /// The balanced threshold `1_{sum x_i > floor(np)}` for `p = t / 2^m`.
    pub fn balanced_threshold(n: u32, bias: DyadicBias) -> Self {
        Family::Threshold { k: floor_np(u64::from(n), bias) as u32 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Dictator { .. } => "dictator",
            Family::And => "and",
            Family::Or => "or",
            Family::Parity => "parity",
            Family::Majority => "majority",
            Family::Threshold { .. } => "threshold",
            Family::Tribes { .. } => "tribes",
        }
    }
}

/// `floor(n * t / 2^m)` in exact integer arithmetic.
pub fn floor_np(n: u64, bias: DyadicBias) -> u64 {
    ((u128::from(n) * u128::from(bias.t())) >> bias.m()) as u64
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `name` or `name:param`, e.g. `dictator:2`, `threshold:3`, `tribes:2`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((name, param)) => (name, Some(param)),
            None => (s, None),
        };
        let parse = |family: &'static str| -> Result<Option<u32>> {
            param
                .map(|p| {
                    p.trim().parse::<u32>().map_err(|_| Error::InvalidFamilyParam {
                        family,
                        reason: "parameter must be a nonnegative integer",
                    })
                })
                .transpose()
        };
        let no_param = |family: &'static str, fam: Family| -> Result<Family> {
            match param {
                None => Ok(fam),
                Some(_) => Err(Error::InvalidFamilyParam { family, reason: "takes no parameter" }),
            }
        };
        match name.trim().to_ascii_lowercase().as_str() {
            "dictator" => Ok(Family::Dictator { coord: parse("dictator")?.unwrap_or(1) as usize }),
            "and" => no_param("and", Family::And),
            "or" => no_param("or", Family::Or),
            "parity" => no_param("parity", Family::Parity),
            "majority" => no_param("majority", Family::Majority),
            "threshold" => match parse("threshold")? {
                Some(k) => Ok(Family::Threshold { k }),
                None => Err(Error::InvalidFamilyParam { family: "threshold", reason: "needs `threshold:k`" }),
            },
            "tribes" => Ok(Family::Tribes { width: parse("tribes")?.unwrap_or(2) }),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// Exact truth table of a named family on `n >= 1` coordinates.
pub fn named_family(family: &Family, n: u32) -> Result<CubeFunction> {
    if n == 0 {
        return Err(Error::InvalidFamilyParam { family: family.name(), reason: "n must be at least 1" });
    }
    check_dimension(n)?;
    match *family {
        Family::Dictator { coord } => {
            if coord == 0 || coord > n as usize {
                return Err(Error::CoordinateOutOfRange { coord, n });
            }
            CubeFunction::from_indicator(n, |x| x.coord(coord))
        }
        Family::And => CubeFunction::from_indicator(n, |x| x.weight() == n),
        Family::Or => CubeFunction::from_indicator(n, |x| x.weight() > 0),
        Family::Parity => CubeFunction::from_indicator(n, |x| x.weight() % 2 == 1),
        Family::Majority => CubeFunction::from_indicator(n, |x| 2 * x.weight() > n),
        Family::Threshold { k } => {
            if k > n {
                return Err(Error::InvalidFamilyParam { family: "threshold", reason: "k must satisfy 0 <= k <= n" });
            }
            CubeFunction::from_indicator(n, |x| x.weight() > k)
        }
        Family::Tribes { width } => {
            if width == 0 || width > n {
                return Err(Error::InvalidFamilyParam { family: "tribes", reason: "width must satisfy 1 <= width <= n" });
            }
            let groups: Vec<u64> = (0..n)
                .step_by(width as usize)
                .map(|start| {
                    let len = width.min(n - start);
                    ((1u64 << len) - 1) << start
                })
                .collect();
            CubeFunction::from_indicator(n, |x| groups.iter().any(|&g| x.bits() & g == g))
        }
    }
}
