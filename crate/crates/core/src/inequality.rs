//! Checkers for inequalities derived from the reduction: biased
//! hypercontractivity, norms of low-degree functions, the level-`d` transfer,
//! boundary and correlation bounds for monotone sets, the level-`d` bound for
//! monotone functions, the first-level Parseval bound and the threshold
//! tightness table.
//!
//! `L = floor(log2(1/p))`. The `log(e/x)` factors are natural logarithms with
//! the argument clamped at `1e-300`. Statements with an unspecified constant
//! are reported with that constant set to 1 and a ratio-only verdict.

use alloc::vec::Vec;

use crate::bias::{DyadicBias, Measure};
use crate::binomial;
use crate::error::{Error, Result};
use crate::fourier::{q_norm, transform, Spectrum};
use crate::function::{floor_np, CubeFunction};
use crate::influence::{boundary_sets, influences, is_monotone, with_bias, BoundarySummary};
use crate::math;
use crate::reduction::{level_weight_lower_bound, reduce_with_cap, DEFAULT_DENSE_CAP};
use crate::report::{InequalityReport, Relation};

/// Tolerance below which a coefficient counts as zero for degree checks.
pub const DEGREE_TOL: f64 = 1e-10;

/// Default exponent split in the boundary inequality.
pub const DEFAULT_ALPHA: f64 = 0.5;

/// `||T_delta f||_2 <= ||f||_q` with `q = 1 + delta^2 (1-p)/(pL)`.
///
/// Rates outside `[0, sqrt(pL/(1-p))]` are evaluated and flagged as outside
/// the hypothesis.
pub fn hypercontractivity_check(f: &CubeFunction, delta: f64, bias: DyadicBias) -> Result<InequalityReport> {
    let spectrum = transform(f, bias);
    hypercontractivity_from_spectrum(f, &spectrum, delta, bias)
}

/// The same check at every rate in `deltas`, transforming `f` once.
pub fn hypercontractivity_sweep(f: &CubeFunction, deltas: &[f64], bias: DyadicBias) -> Result<Vec<InequalityReport>> {
    let spectrum = transform(f, bias);
    deltas.iter().map(|&d| hypercontractivity_from_spectrum(f, &spectrum, d, bias)).collect()
}

/// `sqrt(pL/(1-p))`, the largest admissible noise rate.
pub fn max_noise_rate(bias: DyadicBias) -> f64 {
    math::sqrt(bias.level_factor())
}

fn hypercontractivity_from_spectrum(
    f: &CubeFunction,
    spectrum: &Spectrum,
    delta: f64,
    bias: DyadicBias,
) -> Result<InequalityReport> {
    if !delta.is_finite() {
        return Err(Error::InvalidParameter("noise rate must be finite"));
    }
    let d2 = delta * delta;
    let lhs = math::sqrt(
        spectrum
            .coeffs()
            .iter()
            .enumerate()
            .map(|(s, c)| math::powi(d2, s.count_ones()) * c * c)
            .sum(),
    );
    let q = 1.0 + d2 / bias.level_factor();
    let rhs = q_norm(f, q, bias)?;
    let inside = (0.0..=max_noise_rate(bias)).contains(&delta);
    Ok(with_bias(InequalityReport::explicit("hypercontractivity", Relation::AtMost, lhs, rhs), bias)
        .with_param("delta", delta)
        .with_param("q", q)
        .with_hypothesis(inside))
}

/// `||f||_q <= (((1-p)/(pL)) (q-1))^{d/2} ||f||_2` for `f` of degree at most `d`, `q >= 2`.
pub fn low_degree_norm_check(f: &CubeFunction, q: f64, d: usize, bias: DyadicBias) -> Result<InequalityReport> {
    if !(q.is_finite() && q >= 2.0) {
        return Err(Error::InvalidExponent(q));
    }
    let spectrum = transform(f, bias);
    let above = spectrum
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(s, _)| s.count_ones() as usize > d)
        .map(|(_, c)| c.abs())
        .fold(0.0, f64::max);
    if above > DEGREE_TOL {
        return Err(Error::DegreeExceeded { degree: d, magnitude: above });
    }
    let lhs = q_norm(f, q, bias)?;
    let growth = math::powf((q - 1.0) / bias.level_factor(), d as f64 / 2.0);
    let rhs = growth * math::sqrt(spectrum.total_weight());
    Ok(with_bias(InequalityReport::explicit("low_degree_norm", Relation::AtMost, lhs, rhs), bias)
        .with_param("q", q)
        .with_param("d", d as f64))
}

/// `W_d(g) >= ((pL)/(1-p))^d W_d(f)` for `g = Red(f)`.
pub fn level_d_transfer_check(f: &CubeFunction, d: usize, bias: DyadicBias) -> Result<InequalityReport> {
    level_d_transfer_check_with_cap(f, d, bias, DEFAULT_DENSE_CAP)
}

pub fn level_d_transfer_check_with_cap(
    f: &CubeFunction,
    d: usize,
    bias: DyadicBias,
    dense_cap: u32,
) -> Result<InequalityReport> {
    if d > f.n() as usize {
        return Err(Error::LevelOutOfRange { level: d, n: f.n() });
    }
    let mut all = level_transfer_checks(f, bias, dense_cap)?;
    Ok(all.swap_remove(d))
}

/// Level-transfer reports for `d = 0..=n`, reducing and transforming once.
pub fn level_transfer_checks(f: &CubeFunction, bias: DyadicBias, dense_cap: u32) -> Result<Vec<InequalityReport>> {
    let g = reduce_with_cap(f, bias, dense_cap)?;
    let weights_g = transform(g.require_dense()?, Measure::Uniform).level_weights();
    let spec_f = transform(f, bias);
    (0..=f.n() as usize)
        .map(|d| {
            let rhs = level_weight_lower_bound(&spec_f, d, bias)?;
            Ok(with_bias(InequalityReport::explicit("level_transfer", Relation::AtLeast, weights_g[d], rhs), bias)
                .with_param("d", d as f64))
        })
        .collect()
}

/// The boundary inequality for a monotone set and the explicit steps that
/// carry it over from the uniform cube.
#[derive(Clone, Debug, PartialEq)]
pub struct TalagrandReport {
    /// `mu(dA) sum_i mu(A_i)` against `(1/L) phi(mu(A)(1-mu(A))) psi(3L sum_i mu(A_i)^2)`, ratio only.
    pub main: InequalityReport,
    pub summary: BoundarySummary,
    /// `mu_{1/2}(dB) <= mu_p(dA)` for `B = Red(A)`.
    pub boundary_containment: Option<InequalityReport>,
    /// `sum_j mu_{1/2}(B_j) <= 3L sum_i mu_p(A_i)`.
    pub influence_sum_transfer: Option<InequalityReport>,
    /// `sum_j mu_{1/2}(B_j)^2 <= 3L sum_i mu_p(A_i)^2`.
    pub influence_square_transfer: Option<InequalityReport>,
}

impl TalagrandReport {
    pub fn explicit_steps(&self) -> impl Iterator<Item = &InequalityReport> {
        [&self.boundary_containment, &self.influence_sum_transfer, &self.influence_square_transfer]
            .into_iter()
            .flatten()
    }
}

pub fn talagrand_boundary_report(a: &CubeFunction, bias: DyadicBias, alpha: f64) -> Result<TalagrandReport> {
    talagrand_boundary_report_with_cap(a, bias, alpha, DEFAULT_DENSE_CAP)
}

/// As [`talagrand_boundary_report`]; the transfer steps are skipped when `mn > dense_cap`.
pub fn talagrand_boundary_report_with_cap(
    a: &CubeFunction,
    bias: DyadicBias,
    alpha: f64,
    dense_cap: u32,
) -> Result<TalagrandReport> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter("alpha must lie in (0, 1]"));
    }
    if !a.is_boolean() {
        return Err(Error::NotBoolean);
    }
    if !is_monotone(a) {
        return Err(Error::NotMonotone);
    }
    let summary = boundary_sets(a, bias)?;
    let mu = summary.measure_of_set;
    if mu <= 0.0 || mu >= 1.0 {
        return Err(Error::DegenerateMeasure(mu));
    }
    let l = f64::from(bias.log_floor());
    let lhs = summary.boundary * summary.direction_sum();
    let x = mu * (1.0 - mu);
    let phi = x * x * log_power(math::ln_e_over(x), 1.0 - alpha);
    let psi = log_power(math::ln_e_over(3.0 * l * summary.direction_square_sum()), alpha);
    let main = with_bias(InequalityReport::ratio_only("talagrand_boundary", Relation::AtLeast, lhs, phi * psi / l), bias)
        .with_param("alpha", alpha)
        .with_param("c", 1.0);

    let mut report = TalagrandReport {
        main,
        summary,
        boundary_containment: None,
        influence_sum_transfer: None,
        influence_square_transfer: None,
    };
    if a.n() * bias.m() <= dense_cap {
        let g = reduce_with_cap(a, bias, dense_cap)?;
        let on_b = boundary_sets(g.require_dense()?, Measure::Uniform)?;
        let s = &report.summary;
        report.boundary_containment = Some(with_bias(
            InequalityReport::explicit("boundary_containment", Relation::AtMost, on_b.boundary, s.boundary),
            bias,
        ));
        report.influence_sum_transfer = Some(with_bias(
            InequalityReport::explicit(
                "boundary_direction_sum",
                Relation::AtMost,
                on_b.direction_sum(),
                3.0 * l * s.direction_sum(),
            ),
            bias,
        ));
        report.influence_square_transfer = Some(with_bias(
            InequalityReport::explicit(
                "boundary_direction_squares",
                Relation::AtMost,
                on_b.direction_square_sum(),
                3.0 * l * s.direction_square_sum(),
            ),
            bias,
        ));
    }
    Ok(report)
}

// log^power for a possibly non-positive log; zero there, which leaves the ratio undefined.
fn log_power(log: f64, power: f64) -> f64 {
    if log <= 0.0 {
        0.0
    } else {
        math::powf(log, power)
    }
}

/// One quantity of the threshold tightness table.
#[derive(Clone, Debug, PartialEq)]
pub struct TightnessRow {
    pub quantity: &'static str,
    pub exact: f64,
    pub asymptotic: f64,
    pub ratio: f64,
}

/// Exact boundary quantities of `A = {x : sum x > floor(np)}` next to their
/// normal approximations.
#[derive(Clone, Debug, PartialEq)]
pub struct TightnessTable {
    pub n: u64,
    pub p: f64,
    /// `floor(np)`.
    pub k: u64,
    pub measure_of_set: f64,
    /// Rows `boundary`, `direction`, `lhs_product`, `sum_direction_squares`.
    pub rows: Vec<TightnessRow>,
}

impl TightnessTable {
    pub fn row(&self, quantity: &str) -> Option<&TightnessRow> {
        self.rows.iter().find(|r| r.quantity == quantity)
    }
}

pub fn threshold_tightness_table(n: u64, bias: DyadicBias) -> Result<TightnessTable> {
    if n == 0 {
        return Err(Error::InvalidParameter("tightness table needs n >= 1"));
    }
    let p = bias.p();
    let q = 1.0 - p;
    let k = floor_np(n, bias);
    let nf = n as f64;
    let two_pi = 2.0 * core::f64::consts::PI;
    let measure_of_set = binomial::upper_tail(k, n, p);
    let boundary = binomial::pmf(k + 1, n, p);
    let direction = p * binomial::pmf(k, n - 1, p);
    let exact_and_limit = [
        ("boundary", boundary, 1.0 / math::sqrt(two_pi * nf * p * q)),
        ("direction", direction, math::sqrt(p / (two_pi * nf * q))),
        ("lhs_product", boundary * nf * direction, 1.0 / (two_pi * q)),
        ("sum_direction_squares", nf * direction * direction, p / (two_pi * q)),
    ];
    let rows = exact_and_limit
        .into_iter()
        .map(|(quantity, exact, asymptotic)| TightnessRow { quantity, exact, asymptotic, ratio: exact / asymptotic })
        .collect();
    Ok(TightnessTable { n, p, k, measure_of_set, rows })
}

/// `sum_{|S|=d} hat f(S)^2` against
/// `((1-p)/(pL))^{d-1} p(1-p) sum_i I_i^2 log^{d-1}(e / (p^2 L sum_i I_i^2))`, ratio only.
pub fn bks_ratio(f: &CubeFunction, d: usize, bias: DyadicBias) -> Result<InequalityReport> {
    if d < 2 {
        return Err(Error::InvalidParameter("the level-d bound needs d >= 2"));
    }
    if d > f.n() as usize {
        return Err(Error::LevelOutOfRange { level: d, n: f.n() });
    }
    if !f.is_boolean() {
        return Err(Error::NotBoolean);
    }
    if !is_monotone(f) {
        return Err(Error::NotMonotone);
    }
    let lhs = transform(f, bias).level_weight(d);
    let squares = influences(f, bias)?.sum_of_squares();
    let (rhs, guarded) = match bks_rhs(bias, squares, d) {
        Some(rhs) => (rhs, false),
        None => (0.0, true),
    };
    Ok(with_bias(InequalityReport::ratio_only("bks_level", Relation::AtMost, lhs, rhs), bias)
        .with_param("d", d as f64)
        .with_param("log_guard", f64::from(u8::from(guarded))))
}

/// Constant-free right side of the level-`d` bound; `None` when `log(e/x) <= 0`.
pub fn bks_rhs(bias: DyadicBias, influence_squares: f64, d: usize) -> Option<f64> {
    let p = bias.p();
    let l = f64::from(bias.log_floor());
    let log = math::ln_e_over(p * p * l * influence_squares);
    (log > 0.0).then(|| {
        let k = (d - 1) as u32;
        math::powi(1.0 / bias.level_factor(), k) * p * (1.0 - p) * influence_squares * math::powi(log, k)
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationReport {
    /// `mu(A and B) - mu(A) mu(B) >= 0`.
    pub harris_kleitman: InequalityReport,
    /// The same left side against `phi(L sum_i I_i(A) I_i(B))`, `phi(x) = x / log(e/x)`, ratio only.
    pub talagrand: InequalityReport,
}

pub fn correlation_report(a: &CubeFunction, b: &CubeFunction, bias: DyadicBias) -> Result<CorrelationReport> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch("both sets must live on the same cube"));
    }
    if !a.is_boolean() || !b.is_boolean() {
        return Err(Error::NotBoolean);
    }
    if !is_monotone(a) || !is_monotone(b) {
        return Err(Error::NotMonotone);
    }
    let both = CubeFunction::from_values(a.n(), a.values().iter().zip(b.values()).map(|(x, y)| x * y).collect())?;
    let lhs = both.expectation(bias) - a.expectation(bias) * b.expectation(bias);
    let harris_kleitman = with_bias(InequalityReport::explicit("harris_kleitman", Relation::AtLeast, lhs, 0.0), bias);
    let overlap = influences(a, bias)?.dot(&influences(b, bias)?);
    let x = f64::from(bias.log_floor()) * overlap;
    let log = math::ln_e_over(x);
    let (rhs, guarded) = if log > 0.0 { (x / log, false) } else { (0.0, true) };
    let talagrand = with_bias(InequalityReport::ratio_only("talagrand_correlation", Relation::AtLeast, lhs, rhs), bias)
        .with_param("influence_overlap", overlap)
        .with_param("log_guard", f64::from(u8::from(guarded)));
    Ok(CorrelationReport { harris_kleitman, talagrand })
}

/// `sum_i hat f({i}) hat g({i}) / (p(1-p))`, which equals `sum_i I_i(f) I_i(g)`
/// for monotone Boolean `f, g`.
pub fn influence_product_via_spectrum(f: &CubeFunction, g: &CubeFunction, measure: impl Into<Measure>) -> Result<f64> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch("both functions must live on the same cube"));
    }
    let measure = measure.into();
    let p = measure.p();
    let (sf, sg) = (transform(f, measure), transform(g, measure));
    let dot: f64 = (0..f.n()).map(|bit| sf.coeffs()[1 << bit] * sg.coeffs()[1 << bit]).sum();
    Ok(dot / (p * (1.0 - p)))
}

/// `sum_i hat f({i})^2 <= E f (1 - E f)` for Boolean `f`.
pub fn first_level_parseval_check(f: &CubeFunction, measure: impl Into<Measure>) -> Result<InequalityReport> {
    if !f.is_boolean() {
        return Err(Error::NotBoolean);
    }
    let measure = measure.into();
    let spectrum = transform(f, measure);
    let mean = spectrum.coefficient(crate::mask::SubsetMask::EMPTY);
    let report =
        InequalityReport::explicit("first_level_parseval", Relation::AtMost, spectrum.level_weight(1), mean * (1.0 - mean));
    Ok(report.with_param("p", measure.p()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{named_family, Family};
    use crate::report::Verdict;
    use alloc::vec;

    fn bias(t: u64, m: u32) -> DyadicBias {
        DyadicBias::new(t, m).unwrap()
    }

    #[test]
    fn hyper_at_zero_rate_is_mean_against_l1() {
        let c = CubeFunction::constant(3, -2.0).unwrap();
        let r = hypercontractivity_check(&c, 0.0, bias(3, 3)).unwrap();
        assert!((r.lhs - 2.0).abs() < 1e-14 && (r.rhs - 2.0).abs() < 1e-14);
        assert!(r.holds());
        let maj = named_family(&Family::Majority, 3).unwrap();
        let r = hypercontractivity_check(&maj, 0.0, bias(1, 2)).unwrap();
        assert!(r.lhs <= r.rhs + 1e-15);
    }

    #[test]
    fn hyper_flags_rates_outside_hypothesis() {
        let maj = named_family(&Family::Majority, 3).unwrap();
        let b = bias(1, 2);
        let r = hypercontractivity_check(&maj, max_noise_rate(b) * 1.5, b).unwrap();
        assert!(!r.in_hypothesis);
        assert!(!r.is_violation());
        let r = hypercontractivity_check(&maj, max_noise_rate(b), b).unwrap();
        assert!(r.in_hypothesis && r.holds());
        assert!((r.param("q").unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn uniform_case_is_bonami_beckner() {
        let maj = named_family(&Family::Majority, 5).unwrap();
        let r = hypercontractivity_check(&maj, 0.6, DyadicBias::uniform()).unwrap();
        assert!((r.param("q").unwrap() - 1.36).abs() < 1e-15);
        assert!(r.holds());
    }

    #[test]
    fn low_degree_examples() {
        let b = bias(1, 2);
        let c = CubeFunction::constant(2, 0.7).unwrap();
        for q in [2.0, 3.0, 4.0] {
            let r = low_degree_norm_check(&c, q, 0, b).unwrap();
            assert!((r.lhs - r.rhs).abs() < 1e-14);
        }
        // 1 + u_{1} at p = 1/4: values 1 + 1/sqrt(3) and 1 - sqrt(3)
        let f = CubeFunction::from_values(1, vec![1.0 + math::sqrt(1.0 / 3.0), 1.0 - math::sqrt(3.0)]).unwrap();
        let r = low_degree_norm_check(&f, 4.0, 1, b).unwrap();
        let direct = math::powf(
            0.75 * math::powi(1.0 + math::sqrt(1.0 / 3.0), 4) + 0.25 * math::powi(math::sqrt(3.0) - 1.0, 4),
            0.25,
        );
        assert!((r.lhs - direct).abs() < 1e-14);
        assert!((r.rhs - math::sqrt(4.5) * math::sqrt(2.0)).abs() < 1e-14);
        assert!(r.holds());
        let maj = named_family(&Family::Majority, 3).unwrap();
        assert!(matches!(low_degree_norm_check(&maj, 4.0, 1, b), Err(Error::DegreeExceeded { .. })));
        assert!(low_degree_norm_check(&c, 1.5, 0, b).is_err());
    }

    #[test]
    fn level_transfer_equality_case() {
        let b = bias(1, 2);
        let u1 = CubeFunction::from_values(1, vec![math::sqrt(1.0 / 3.0), -math::sqrt(3.0)]).unwrap();
        let r = level_d_transfer_check(&u1, 1, b).unwrap();
        assert!((r.lhs - 2.0 / 3.0).abs() < 1e-12 && (r.rhs - 2.0 / 3.0).abs() < 1e-12);
        assert!(r.holds());
        let r0 = level_d_transfer_check(&u1, 0, b).unwrap();
        assert!((r0.lhs - r0.rhs).abs() < 1e-14);
    }

    #[test]
    fn talagrand_dictator() {
        let b = bias(1, 3);
        let d = named_family(&Family::Dictator { coord: 1 }, 2).unwrap();
        let r = talagrand_boundary_report(&d, b, DEFAULT_ALPHA).unwrap();
        let p = b.p();
        assert!((r.main.lhs - p * p).abs() < 1e-15);
        assert_eq!(r.main.verdict, Verdict::RatioOnly);
        let x: f64 = p * (1.0 - p);
        let expected = x * x * math::sqrt(1.0 - math::ln(x)) * math::sqrt(1.0 - math::ln(3.0 * 3.0 * p * p)) / 3.0;
        assert!((r.main.rhs - expected).abs() < 1e-15);
        assert_eq!(r.explicit_steps().count(), 3);
        assert!(r.explicit_steps().all(InequalityReport::holds));
    }

    #[test]
    fn talagrand_rejects_bad_input() {
        let b = bias(1, 2);
        let parity = named_family(&Family::Parity, 2).unwrap();
        assert_eq!(talagrand_boundary_report(&parity, b, 0.5), Err(Error::NotMonotone));
        let full = CubeFunction::constant(2, 1.0).unwrap();
        assert!(matches!(talagrand_boundary_report(&full, b, 0.5), Err(Error::DegenerateMeasure(_))));
        let d = named_family(&Family::Dictator { coord: 1 }, 2).unwrap();
        assert!(talagrand_boundary_report(&d, b, 0.0).is_err());
        let r = talagrand_boundary_report_with_cap(&d, b, 1.0, 2).unwrap();
        assert!(r.boundary_containment.is_none());
    }

    #[test]
    fn tightness_small_cases() {
        let t = threshold_tightness_table(1, DyadicBias::uniform()).unwrap();
        assert_eq!(t.k, 0);
        assert!((t.row("boundary").unwrap().exact - 0.5).abs() < 1e-15);
        assert!((t.measure_of_set - 0.5).abs() < 1e-15);
        let t = threshold_tightness_table(10_000, bias(1, 2)).unwrap();
        let r = t.row("boundary").unwrap().ratio;
        assert!((0.95..=1.05).contains(&r));
        assert!(threshold_tightness_table(0, bias(1, 2)).is_err());
    }

    #[test]
    fn bks_examples() {
        let b = bias(1, 2);
        let d = named_family(&Family::Dictator { coord: 2 }, 3).unwrap();
        let r = bks_ratio(&d, 2, b).unwrap();
        assert!(r.lhs.abs() < 1e-15);
        assert_eq!(r.ratio.map(|v| v.abs() < 1e-14), Some(true));
        assert_eq!(bks_ratio(&named_family(&Family::Parity, 3).unwrap(), 2, b), Err(Error::NotMonotone));
        assert!(bks_ratio(&d, 1, b).is_err());
        assert_eq!(bks_rhs(DyadicBias::uniform(), 20.0, 2), None);
        assert!(bks_rhs(DyadicBias::uniform(), 0.5, 2).is_some());
    }

    #[test]
    fn correlation_examples() {
        let b = bias(1, 2);
        let d = named_family(&Family::Dictator { coord: 1 }, 2).unwrap();
        let r = correlation_report(&d, &d, b).unwrap();
        assert!((r.harris_kleitman.lhs - 0.25 * 0.75).abs() < 1e-15);
        assert!(r.harris_kleitman.holds());
        let e = named_family(&Family::Dictator { coord: 2 }, 2).unwrap();
        let r = correlation_report(&d, &e, b).unwrap();
        assert!(r.harris_kleitman.lhs.abs() < 1e-15);
        assert_eq!(r.talagrand.param("influence_overlap"), Some(0.0));
        // L sum I_A I_B = 3 > e at p = 1/8
        let r = correlation_report(&d, &d, bias(1, 3)).unwrap();
        assert_eq!(r.talagrand.param("log_guard"), Some(1.0));
        assert_eq!(r.talagrand.ratio, None);
    }

    #[test]
    fn spectral_influence_product_matches_monotone_influences() {
        let b = bias(3, 3);
        let maj = named_family(&Family::Majority, 3).unwrap();
        let and = named_family(&Family::And, 3).unwrap();
        let direct = influences(&maj, b).unwrap().dot(&influences(&and, b).unwrap());
        let spectral = influence_product_via_spectrum(&maj, &and, b).unwrap();
        assert!((direct - spectral).abs() < 1e-12);
    }

    #[test]
    fn parseval_examples() {
        let d = named_family(&Family::Dictator { coord: 1 }, 3).unwrap();
        let r = first_level_parseval_check(&d, Measure::Real(0.3)).unwrap();
        assert!((r.lhs - 0.21).abs() < 1e-15 && (r.rhs - 0.21).abs() < 1e-15);
        assert!(r.holds());
        let c = CubeFunction::constant(3, 1.0).unwrap();
        let r = first_level_parseval_check(&c, Measure::Real(0.3)).unwrap();
        assert!(r.lhs.abs() < 1e-15 && r.rhs.abs() < 1e-15);
    }
}
