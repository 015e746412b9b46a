//! Influences under `mu_p`, monotonicity, vertex boundaries of sets, and the
//! bounds that carry influences of `f` over to influences of `g = Red(f)`.

use alloc::vec::Vec;

use crate::bias::{DyadicBias, Measure};
use crate::error::{Error, Result};
use crate::fourier::transform;
use crate::function::{point_weights, CubeFunction};
use crate::reduction::{reduce_with_cap, DEFAULT_DENSE_CAP};
use crate::report::{InequalityReport, Relation};

/// `I_1(f), ..., I_n(f)` under one measure.
#[derive(Clone, Debug, PartialEq)]
pub struct InfluenceVector {
    pub values: Vec<f64>,
    pub measure: Measure,
}

impl InfluenceVector {
    /// `I_i`, 1-based.
    pub fn get(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `sum_i I_i`.
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `sum_i I_i^2`.
    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    /// `sum_i I_i(self) I_i(other)`.
    pub fn dot(&self, other: &InfluenceVector) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum()
    }
}

/// `I_i(f) = Pr[f(x) != f(x xor e_i)]`, `i` 1-based.
pub fn influence(f: &CubeFunction, i: usize, measure: impl Into<Measure>) -> Result<f64> {
    if !f.is_boolean() {
        return Err(Error::NotBoolean);
    }
    if i == 0 || i > f.n() as usize {
        return Err(Error::CoordinateOutOfRange { coord: i, n: f.n() });
    }
    let w = point_weights(f.n(), measure.into());
    Ok(coordinate_influence(f.values(), &w, i - 1))
}

/// All `n` influences.
pub fn influences(f: &CubeFunction, measure: impl Into<Measure>) -> Result<InfluenceVector> {
    if !f.is_boolean() {
        return Err(Error::NotBoolean);
    }
    let measure = measure.into();
    let w = point_weights(f.n(), measure);
    let values = (0..f.n() as usize).map(|bit| coordinate_influence(f.values(), &w, bit)).collect();
    Ok(InfluenceVector { values, measure })
}

fn coordinate_influence(values: &[f64], weights: &[f64], bit: usize) -> f64 {
    let step = 1usize << bit;
    let mut total = 0.0;
    for x in (0..values.len()).filter(|x| x & step == 0) {
        if values[x] != values[x | step] {
            total += weights[x] + weights[x | step];
        }
    }
    total
}

/// `f(x) >= f(y)` whenever `x >= y`, checked on every edge of the cube.
pub fn is_monotone(f: &CubeFunction) -> bool {
    let values = f.values();
    (0..f.n()).all(|bit| {
        let step = 1usize << bit;
        (0..values.len()).filter(|x| x & step == 0).all(|x| values[x] <= values[x | step])
    })
}

/// Masses of `A`, of its vertex boundary and of each `A_i = {x in A : x xor e_i not in A}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySummary {
    pub measure_of_set: f64,
    pub boundary: f64,
    /// `mu(A_1), ..., mu(A_n)`.
    pub directions: Vec<f64>,
}

impl BoundarySummary {
    /// `sum_i mu(A_i)`.
    pub fn direction_sum(&self) -> f64 {
        self.directions.iter().sum()
    }

    /// `sum_i mu(A_i)^2`.
    pub fn direction_square_sum(&self) -> f64 {
        self.directions.iter().map(|v| v * v).sum()
    }
}

/// Boundary masses of `A = {f = 1}`.
pub fn boundary_sets(a: &CubeFunction, measure: impl Into<Measure>) -> Result<BoundarySummary> {
    if !a.is_boolean() {
        return Err(Error::NotBoolean);
    }
    let n = a.n() as usize;
    let w = point_weights(a.n(), measure.into());
    let values = a.values();
    let mut summary = BoundarySummary { measure_of_set: 0.0, boundary: 0.0, directions: alloc::vec![0.0; n] };
    for (x, (&v, &wx)) in values.iter().zip(&w).enumerate() {
        if v != 1.0 {
            continue;
        }
        summary.measure_of_set += wx;
        let mut on_boundary = false;
        for (bit, mass) in summary.directions.iter_mut().enumerate() {
            if values[x ^ 1 << bit] != 1.0 {
                *mass += wx;
                on_boundary = true;
            }
        }
        if on_boundary {
            summary.boundary += wx;
        }
    }
    Ok(summary)
}

fn reduced_influences(f: &CubeFunction, bias: DyadicBias, dense_cap: u32) -> Result<(InfluenceVector, InfluenceVector)> {
    if !f.is_boolean() {
        return Err(Error::NotBoolean);
    }
    let g = reduce_with_cap(f, bias, dense_cap)?;
    let on_g = influences(g.require_dense()?, Measure::Uniform)?;
    Ok((influences(f, bias)?, on_g))
}

/// `sum_j I_j(g) <= 6 p L sum_i I_i(f)`.
pub fn fk_bound_check(f: &CubeFunction, bias: DyadicBias) -> Result<InequalityReport> {
    fk_bound_check_with_cap(f, bias, DEFAULT_DENSE_CAP)
}

pub fn fk_bound_check_with_cap(f: &CubeFunction, bias: DyadicBias, dense_cap: u32) -> Result<InequalityReport> {
    let (on_f, on_g) = reduced_influences(f, bias, dense_cap)?;
    let rhs = 6.0 * bias.p() * f64::from(bias.log_floor()) * on_f.total();
    Ok(with_bias(InequalityReport::explicit("fk_bound", Relation::AtMost, on_g.total(), rhs), bias))
}

/// One coordinate `(i-1)m + j` of `g` against the pointwise bound
/// `2p I_i(f)` (`j <= L`) or `2^{2-j} I_i(f)` (`j > L`).
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateBound {
    pub block: usize,
    pub position: u32,
    pub influence: f64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SquaresBoundReport {
    /// `sum_j I_j(g)^2 <= 12 p^2 L sum_i I_i(f)^2`.
    pub aggregate: InequalityReport,
    pub coordinates: Vec<CoordinateBound>,
}

impl SquaresBoundReport {
    pub fn all_hold(&self) -> bool {
        self.aggregate.holds() && self.coordinates.iter().all(|c| c.holds)
    }
}

pub fn squares_bound_check(f: &CubeFunction, bias: DyadicBias) -> Result<SquaresBoundReport> {
    squares_bound_check_with_cap(f, bias, DEFAULT_DENSE_CAP)
}

pub fn squares_bound_check_with_cap(f: &CubeFunction, bias: DyadicBias, dense_cap: u32) -> Result<SquaresBoundReport> {
    let (on_f, on_g) = reduced_influences(f, bias, dense_cap)?;
    let p = bias.p();
    let l = bias.log_floor();
    let rhs = 12.0 * p * p * f64::from(l) * on_f.sum_of_squares();
    let aggregate = with_bias(
        InequalityReport::explicit("squares_bound", Relation::AtMost, on_g.sum_of_squares(), rhs),
        bias,
    );
    let m = bias.m() as usize;
    let coordinates = on_g
        .values
        .iter()
        .enumerate()
        .map(|(k, &influence)| {
            let block = k / m + 1;
            let position = (k % m) as u32 + 1;
            let factor = if position <= l { 2.0 * p } else { 4.0 * crate::math::powi(0.5, position) };
            let bound = factor * on_f.get(block);
            let check = InequalityReport::explicit("coordinate_bound", Relation::AtMost, influence, bound);
            CoordinateBound { block, position, influence, bound, holds: check.holds() }
        })
        .collect();
    Ok(SquaresBoundReport { aggregate, coordinates })
}

/// `sum_j hat g({j})^2 <= 3 (pL/(1-p)) sum_i hat f({i})^2`; `f` may be real-valued.
pub fn first_level_transfer_check(f: &CubeFunction, bias: DyadicBias) -> Result<InequalityReport> {
    first_level_transfer_check_with_cap(f, bias, DEFAULT_DENSE_CAP)
}

pub fn first_level_transfer_check_with_cap(f: &CubeFunction, bias: DyadicBias, dense_cap: u32) -> Result<InequalityReport> {
    let g = reduce_with_cap(f, bias, dense_cap)?;
    let lhs = transform(g.require_dense()?, Measure::Uniform).level_weight(1);
    let rhs = 3.0 * bias.level_factor() * transform(f, bias).level_weight(1);
    Ok(with_bias(InequalityReport::explicit("first_level_transfer", Relation::AtMost, lhs, rhs), bias))
}

pub(crate) fn with_bias(report: InequalityReport, bias: DyadicBias) -> InequalityReport {
    report
        .with_param("t", bias.t() as f64)
        .with_param("m", f64::from(bias.m()))
        .with_param("p", bias.p())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{named_family, Family};
    use alloc::vec;

    fn bias(t: u64, m: u32) -> DyadicBias {
        DyadicBias::new(t, m).unwrap()
    }

    #[test]
    fn influence_examples() {
        for &p in &[0.5, 0.25, 0.1] {
            let d = named_family(&Family::Dictator { coord: 1 }, 3).unwrap();
            let inf = influences(&d, Measure::Real(p)).unwrap();
            assert!((inf.get(1) - 1.0).abs() < 1e-15);
            assert_eq!(&inf.values[1..], [0.0, 0.0]);
            let and = named_family(&Family::And, 2).unwrap();
            let inf = influences(&and, Measure::Real(p)).unwrap();
            assert!(inf.values.iter().all(|v| (v - p).abs() < 1e-15));
            let parity = named_family(&Family::Parity, 4).unwrap();
            let inf = influences(&parity, Measure::Real(p)).unwrap();
            assert!(inf.values.iter().all(|v| (v - 1.0).abs() < 1e-14));
        }
        let real = CubeFunction::from_values(1, vec![0.5, 1.0]).unwrap();
        assert_eq!(influence(&real, 1, Measure::Uniform), Err(Error::NotBoolean));
        let d = named_family(&Family::Dictator { coord: 1 }, 2).unwrap();
        assert!(influence(&d, 3, Measure::Uniform).is_err());
    }

    #[test]
    fn monotone_examples() {
        assert!(is_monotone(&named_family(&Family::Majority, 5).unwrap()));
        assert!(!is_monotone(&named_family(&Family::Parity, 2).unwrap()));
        let monotone = (0..1u64 << 16)
            .filter(|&tt| is_monotone(&CubeFunction::from_truth_bits(4, tt).unwrap()))
            .count();
        assert_eq!(monotone, 168);
    }

    #[test]
    fn boundary_examples() {
        let full = CubeFunction::constant(3, 1.0).unwrap();
        let s = boundary_sets(&full, Measure::Real(0.3)).unwrap();
        assert!((s.measure_of_set - 1.0).abs() < 1e-15);
        assert_eq!(s.boundary, 0.0);
        assert!(s.directions.iter().all(|&d| d == 0.0));
        let d = named_family(&Family::Dictator { coord: 1 }, 3).unwrap();
        let s = boundary_sets(&d, Measure::Real(0.3)).unwrap();
        assert!((s.directions[0] - 0.3).abs() < 1e-15);
        assert!((s.boundary - 0.3).abs() < 1e-15);
    }

    #[test]
    fn fk_examples() {
        let d = named_family(&Family::Dictator { coord: 1 }, 1).unwrap();
        let r = fk_bound_check(&d, bias(1, 2)).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-15 && (r.rhs - 3.0).abs() < 1e-15);
        assert!(r.holds());
        let c = CubeFunction::constant(2, 0.0).unwrap();
        let r = fk_bound_check(&c, bias(3, 3)).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        assert!(r.holds());
    }

    #[test]
    fn squares_examples() {
        let d = named_family(&Family::Dictator { coord: 1 }, 1).unwrap();
        let r = squares_bound_check(&d, bias(1, 2)).unwrap();
        assert_eq!(r.coordinates.len(), 2);
        for c in &r.coordinates {
            assert!((c.influence - 0.5).abs() < 1e-15);
            assert!((c.bound - 0.5).abs() < 1e-15);
            assert!(c.holds);
        }
        assert!((r.aggregate.lhs - 0.5).abs() < 1e-15 && (r.aggregate.rhs - 1.5).abs() < 1e-15);
    }

    #[test]
    fn first_level_example() {
        let b = bias(1, 2);
        let u1 = CubeFunction::from_values(1, vec![math_sqrt(1.0 / 3.0), -math_sqrt(3.0)]).unwrap();
        let r = first_level_transfer_check(&u1, b).unwrap();
        assert!((r.lhs - 2.0 / 3.0).abs() < 1e-14);
        assert!((r.rhs - 2.0).abs() < 1e-14);
        assert!(r.holds());
    }

    fn math_sqrt(x: f64) -> f64 {
        crate::math::sqrt(x)
    }

    #[test]
    fn cap_is_reported() {
        let f = named_family(&Family::Majority, 5).unwrap();
        assert!(matches!(fk_bound_check_with_cap(&f, bias(1, 4), 16), Err(Error::DenseCapExceeded { .. })));
    }
}
