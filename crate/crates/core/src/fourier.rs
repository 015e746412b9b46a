//! Biased characters, the fast Fourier-Walsh transform, level weights, norms
//! and the noise operator.
//!
//! Under `mu_p` the one-coordinate character is `sqrt(p/(1-p))` at 0 and
//! `-sqrt((1-p)/p)` at 1, and `u_S` is the product over `S`. Both transform
//! directions are tensor products of a 2x2 map applied coordinate by
//! coordinate, so they cost `O(n 2^n)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::bias::Measure;
use crate::error::{Error, Result};
use crate::function::{point_weights, CubeFunction};
use crate::mask::{PointMask, SubsetMask};
use crate::math;

/// Fourier-Walsh coefficients `hat f(S)` indexed by [`SubsetMask`].
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    n: u32,
    measure: Measure,
    coeffs: Vec<f64>,
}

impl Spectrum {
    pub fn new(n: u32, measure: Measure, coeffs: Vec<f64>) -> Result<Self> {
        if n > crate::function::MAX_DIMENSION {
            return Err(Error::DimensionTooLarge { n, max: crate::function::MAX_DIMENSION });
        }
        let expected = 1usize << n;
        if coeffs.len() != expected {
            return Err(Error::ValueCount { n, expected, got: coeffs.len() });
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteValue { index });
        }
        Ok(Self { n, measure, coeffs })
    }

    pub fn zero(n: u32, measure: Measure) -> Result<Self> {
        if n > crate::function::MAX_DIMENSION {
            return Err(Error::DimensionTooLarge { n, max: crate::function::MAX_DIMENSION });
        }
        Ok(Self { n, measure, coeffs: vec![0.0; 1usize << n] })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn measure(&self) -> Measure {
        self.measure
    }

    #[inline]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    #[inline]
    pub fn coefficient(&self, s: SubsetMask) -> f64 {
        self.coeffs[s.index()]
    }

    /// `sum_{|S| = d} hat f(S)^2`; zero for `d > n`.
    pub fn level_weight(&self, d: usize) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(s, _)| s.count_ones() as usize == d)
            .map(|(_, c)| c * c)
            .sum()
    }

    /// All level weights `W_0, ..., W_n` in one pass.
    pub fn level_weights(&self) -> Vec<f64> {
        let mut w = vec![0.0; self.n as usize + 1];
        for (s, c) in self.coeffs.iter().enumerate() {
            w[s.count_ones() as usize] += c * c;
        }
        w
    }

    /// `sum_S hat f(S)^2 = ||f||_2^2`.
    pub fn total_weight(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Largest `|S|` with `|hat f(S)| > tol`, or `None` for the zero spectrum.
    pub fn degree(&self, tol: f64) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() > tol)
            .map(|(s, _)| s.count_ones() as usize)
            .max()
    }

    /// `T_delta`: scales level `|S|` by `delta^{|S|}`.
    ///
    /// `delta` outside `[0, 1]` is allowed for exploration and only logged.
    pub fn noise(&self, delta: f64) -> Spectrum {
        if !(0.0..=1.0).contains(&delta) {
            log::warn!("noise rate {delta} is outside [0, 1]");
        }
        let powers: Vec<f64> = (0..=self.n).map(|d| math::powi(delta, d)).collect();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(s, c)| c * powers[s.count_ones() as usize])
            .collect();
        Spectrum { n: self.n, measure: self.measure, coeffs }
    }

    /// Zeroes every coefficient above level `d`.
    pub fn truncate(&self, d: usize) -> Spectrum {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(s, &c)| if s.count_ones() as usize <= d { c } else { 0.0 })
            .collect();
        Spectrum { n: self.n, measure: self.measure, coeffs }
    }
}

/// `u_S(T)` under `measure`.
pub fn character(s: SubsetMask, t: PointMask, measure: impl Into<Measure>) -> f64 {
    let p = measure.into().p();
    let inside = s.overlap(t);
    let outside = s.weight() - inside;
    math::powi(-math::sqrt((1.0 - p) / p), inside) * math::powi(math::sqrt(p / (1.0 - p)), outside)
}

/// `hat f(S) = E_mu[f u_S]` for every `S`.
pub fn transform(f: &CubeFunction, measure: impl Into<Measure>) -> Spectrum {
    let measure = measure.into();
    let mut data = f.values().to_vec();
    forward_butterflies(&mut data, measure.p());
    Spectrum { n: f.n(), measure, coeffs: data }
}

/// `f = sum_S hat f(S) u_S`.
pub fn inverse_transform(s: &Spectrum) -> CubeFunction {
    let mut data = s.coeffs.clone();
    inverse_butterflies(&mut data, s.measure.p());
    CubeFunction::from_values(s.n, data).expect("inverse of a finite spectrum is finite")
}

/// `sum_{|S| = d} hat f(S)^2`.
pub fn level_weight(s: &Spectrum, d: usize) -> f64 {
    s.level_weight(d)
}

/// `T_delta` applied to a spectrum.
pub fn noise(s: &Spectrum, delta: f64) -> Spectrum {
    s.noise(delta)
}

/// `||f||_q = (E_mu |f|^q)^{1/q}` for real `q >= 1`.
pub fn q_norm(f: &CubeFunction, q: f64, measure: impl Into<Measure>) -> Result<f64> {
    if !(q.is_finite() && q >= 1.0) {
        return Err(Error::InvalidExponent(q));
    }
    let w = point_weights(f.n(), measure.into());
    let values = f.values().iter().zip(&w);
    Ok(if q == 1.0 {
        values.map(|(v, w)| w * v.abs()).sum()
    } else if q == 2.0 {
        math::sqrt(values.map(|(v, w)| w * v * v).sum())
    } else {
        math::powf(values.map(|(v, w)| w * math::powf(v.abs(), q)).sum(), 1.0 / q)
    })
}

// (f0, f1) -> ((1-p) f0 + p f1, sqrt(p(1-p)) (f0 - f1)) on every coordinate.
fn forward_butterflies(data: &mut [f64], p: f64) {
    let q = 1.0 - p;
    let r = math::sqrt(p * q);
    let mut half = 1;
    while half < data.len() {
        for chunk in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = chunk.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (f0, f1) = (*a, *b);
                *a = q * f0 + p * f1;
                *b = r * (f0 - f1);
            }
        }
        half <<= 1;
    }
}

// (c0, c1) -> (c0 + c1 sqrt(p/(1-p)), c0 - c1 sqrt((1-p)/p)).
fn inverse_butterflies(data: &mut [f64], p: f64) {
    let at_zero = math::sqrt(p / (1.0 - p));
    let at_one = math::sqrt((1.0 - p) / p);
    let mut half = 1;
    while half < data.len() {
        for chunk in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = chunk.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (c0, c1) = (*a, *b);
                *a = c0 + c1 * at_zero;
                *b = c0 - c1 * at_one;
            }
        }
        half <<= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bias::DyadicBias;
    use crate::function::{named_family, Family};

    fn quarter() -> Measure {
        DyadicBias::new(1, 2).unwrap().into()
    }

    #[test]
    fn character_examples() {
        assert_eq!(character(SubsetMask::EMPTY, PointMask(0b101), quarter()), 1.0);
        for s in 0..8u64 {
            for t in 0..8u64 {
                let expected = if (s & t).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                let got = character(SubsetMask(s), PointMask(t), Measure::Uniform);
                assert!((got - expected).abs() < 1e-15);
            }
        }
        let c = character(SubsetMask(1), PointMask(0), quarter());
        assert!((c - 0.577_350_269_189_625_8).abs() < 1e-15);
    }

    #[test]
    fn constant_has_only_empty_coefficient() {
        let f = CubeFunction::constant(3, 2.5).unwrap();
        let s = transform(&f, quarter());
        assert!((s.coefficient(SubsetMask::EMPTY) - 2.5).abs() < 1e-14);
        assert!(s.coeffs()[1..].iter().all(|c| c.abs() < 1e-14));
    }

    #[test]
    fn dictator_spectrum() {
        for &p in &[0.5, 0.25, 0.375, 0.1] {
            let f = named_family(&Family::Dictator { coord: 1 }, 3).unwrap();
            let s = transform(&f, Measure::Real(p));
            assert!((s.coefficient(SubsetMask::EMPTY) - p).abs() < 1e-15);
            assert!((s.coefficient(SubsetMask(1)) + math::sqrt(p * (1.0 - p))).abs() < 1e-15);
            for k in 2..8 {
                assert!(s.coeffs()[k].abs() < 1e-15);
            }
        }
    }

    #[test]
    fn parity_n2_uniform() {
        let f = named_family(&Family::Parity, 2).unwrap();
        let s = transform(&f, Measure::Uniform);
        assert_eq!(s.coeffs(), [0.5, 0.0, 0.0, -0.5]);
    }

    #[test]
    fn inverse_examples() {
        let z = Spectrum::zero(3, quarter()).unwrap();
        assert!(inverse_transform(&z).values().iter().all(|&v| v == 0.0));
        let f = named_family(&Family::Dictator { coord: 2 }, 3).unwrap();
        let back = inverse_transform(&transform(&f, quarter()));
        for (a, b) in back.values().iter().zip(f.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn level_weights_of_boolean_sum_to_mean() {
        let f = named_family(&Family::Majority, 5).unwrap();
        let s = transform(&f, quarter());
        assert!((s.level_weight(0) - f.expectation(quarter()).powi(2)).abs() < 1e-14);
        let total: f64 = s.level_weights().iter().sum();
        assert!((total - f.expectation(quarter())).abs() < 1e-14);
    }

    #[test]
    fn noise_examples() {
        let f = named_family(&Family::Dictator { coord: 1 }, 2).unwrap();
        let s = transform(&f, quarter());
        assert_eq!(s.noise(1.0), s);
        let z = s.noise(0.0);
        assert_eq!(z.coefficient(SubsetMask::EMPTY), s.coefficient(SubsetMask::EMPTY));
        assert!(z.coeffs()[1..].iter().all(|&c| c == 0.0));
        let h = s.noise(0.5);
        assert!((h.coefficient(SubsetMask(1)) + math::sqrt(0.25 * 0.75) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn q_norm_examples() {
        let c = CubeFunction::constant(3, -1.5).unwrap();
        for q in [1.0, 1.5, 2.0, 3.0, 7.25] {
            assert!((q_norm(&c, q, quarter()).unwrap() - 1.5).abs() < 1e-14);
        }
        let f = named_family(&Family::Majority, 3).unwrap();
        let mean = f.expectation(quarter());
        for q in [1.0, 1.3, 2.0, 4.0] {
            assert!((q_norm(&f, q, quarter()).unwrap() - math::powf(mean, 1.0 / q)).abs() < 1e-14);
        }
        assert!(q_norm(&f, 0.5, quarter()).is_err());
    }
}
