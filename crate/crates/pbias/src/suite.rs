//! The ten acceptance criteria, each run over its full grid.
//!
//! Every criterion returns a [`CriterionOutcome`] with the number of checks
//! performed and, on failure, the first failing instance in a form that can
//! be replayed (family or truth table, seed, bias and parameters).

use std::fmt;

use pbias_core::inequality::{
    correlation_report, first_level_parseval_check, hypercontractivity_sweep, level_transfer_checks,
    low_degree_norm_check, max_noise_rate, talagrand_boundary_report, threshold_tightness_table, DEFAULT_ALPHA,
};
use pbias_core::influence::{
    first_level_transfer_check, fk_bound_check, squares_bound_check,
};
use pbias_core::oracle::{character_sum, enumerate_boolean, enumerate_monotone, naive_coefficient, InstanceKind, InstanceStream};
use pbias_core::reduction::{a_factor, predicted_coefficient};
use pbias_core::{
    boundary_sets, character, dual_function, function::point_weights, inverse_transform, named_family, q_norm, reduce,
    transform, CubeFunction, DyadicBias, Family, InequalityReport, Measure, PointMask, Spectrum, SubsetMask,
    DEFAULT_DENSE_CAP,
};
use rayon::prelude::*;

/// Default seed for the random instances of the suite.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub checked: u64,
    pub failures: u64,
    /// First failing instance, if any.
    pub first_failure: Option<String>,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} criterion {:>2}: {} ({} checks", self.id, self.title, self.checked)?;
        if self.failures > 0 {
            write!(f, ", {} failed", self.failures)?;
        }
        f.write_str(")")?;
        if let Some(first) = &self.first_failure {
            write!(f, "; first failure: {first}")?;
        }
        Ok(())
    }
}

/// Counts checks and keeps the first failure.
#[derive(Clone, Debug, Default)]
struct Tally {
    checked: u64,
    failures: u64,
    first_failure: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn report(&mut self, r: &InequalityReport, label: &str) {
        self.check(!r.is_violation(), || format!("{label}: {r}"));
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
        self
    }

    fn finish(self, id: u8, title: &'static str) -> CriterionOutcome {
        CriterionOutcome { id, title, checked: self.checked, failures: self.failures, first_failure: self.first_failure }
    }
}

fn merge_all(parts: Vec<Tally>) -> Tally {
    parts.into_iter().fold(Tally::default(), Tally::merge)
}

/// A function with a replayable description.
#[derive(Clone, Debug)]
struct Instance {
    label: String,
    f: CubeFunction,
}

fn exhaustive_boolean(n: u32) -> Vec<Instance> {
    enumerate_boolean(n)
        .expect("within the enumeration cap")
        .enumerate()
        .map(|(k, f)| Instance { label: format!("boolean n={n} truth={k:#x}"), f })
        .collect()
}

fn exhaustive_monotone(n: u32) -> Vec<Instance> {
    enumerate_monotone(n)
        .expect("within the enumeration cap")
        .map(|f| Instance { label: format!("monotone n={n} truth={:#x}", f.truth_bits().unwrap_or(0)), f })
        .collect()
}

fn random(kind: InstanceKind, n: u32, seed: u64, count: u64) -> Vec<Instance> {
    let name = match kind {
        InstanceKind::RandomBoolean => "random-boolean",
        _ => "random-real",
    };
    InstanceStream::random(kind, n, seed, count)
        .expect("valid random stream")
        .enumerate()
        .map(|(k, f)| Instance { label: format!("{name} n={n} seed={seed} index={k}"), f })
        .collect()
}

fn biases(m_max: u32) -> Vec<DyadicBias> {
    (1..=m_max)
        .flat_map(|m| (1..=1u64 << (m - 1)).map(move |t| DyadicBias::new(t, m).expect("valid grid bias")))
        .collect()
}

fn bias_label(b: DyadicBias) -> String {
    format!("t={} m={}", b.t(), b.m())
}

/// Seed used for one (criterion, n) cell of the grid.
fn cell_seed(seed: u64, criterion: u64, n: u32) -> u64 {
    seed ^ (criterion << 32) ^ u64::from(n)
}

fn coefficient_grid(seed: u64) -> Vec<Instance> {
    (0..=2)
        .flat_map(|n| {
            let mut v = exhaustive_boolean(n);
            v.extend(random(InstanceKind::RandomReal, n, cell_seed(seed, 1, n), 100));
            v
        })
        .collect()
}

/// Criterion 1: predicted coefficients of `g` against the brute-force spectrum of `g`.
pub fn coefficient_prediction(seed: u64) -> CriterionOutcome {
    let instances = coefficient_grid(seed);
    let parts: Vec<Tally> = biases(3)
        .into_par_iter()
        .map(|b| {
            let mut tally = Tally::default();
            for inst in &instances {
                let spec_f = transform(&inst.f, b);
                let g = reduce(&inst.f, b).expect("small reduction");
                let spec_g = transform(g.dense().expect("dense"), Measure::Uniform);
                for (s, &actual) in spec_g.coeffs().iter().enumerate() {
                    let predicted = predicted_coefficient(&spec_f, SubsetMask::from(s), b).expect("matching measure");
                    let describe = || format!("{} {} S={}: actual {actual}, predicted {predicted:?}", inst.label, bias_label(b), SubsetMask::from(s));
                    tally.check((predicted.magnitude - actual.abs()).abs() < 1e-10, describe);
                    if let Some(signed) = predicted.signed {
                        tally.check((signed - actual).abs() < 1e-10, describe);
                    }
                }
            }
            tally
        })
        .collect();
    merge_all(parts).finish(1, "coefficient prediction exactness")
}

/// Criterion 2: exact character sums over the top-`t` blocks.
pub fn character_sums() -> CriterionOutcome {
    let mut tally = Tally::default();
    for b in biases(6) {
        for s in 1..1u64 << b.m() {
            let r = character_sum(SubsetMask(s), b).expect("nonempty subset in the block");
            let top = 64 - s.leading_zeros();
            let label = || format!("{} S={}: {r:?}", bias_label(b), SubsetMask(s));
            tally.check(r.magnitude_ok && r.expected_magnitude == a_factor(top, b), label);
            if let Some(ok) = r.signed_ok {
                tally.check(ok, label);
            }
        }
    }
    tally.finish(2, "character-sum identities")
}

/// Criterion 3: the level-weight lower bound on the grid of criterion 1, and its equality case.
pub fn level_transfer(seed: u64) -> CriterionOutcome {
    let instances = coefficient_grid(seed);
    let parts: Vec<Tally> = biases(3)
        .into_par_iter()
        .map(|b| {
            let mut tally = Tally::default();
            for inst in &instances {
                for r in level_transfer_checks(&inst.f, b, DEFAULT_DENSE_CAP).expect("small reduction") {
                    tally.report(&r, &format!("{} {}", inst.label, bias_label(b)));
                }
            }
            tally
        })
        .collect();
    let mut tally = merge_all(parts);
    let b = DyadicBias::new(1, 2).expect("p = 1/4");
    let dictator = named_family(&Family::Dictator { coord: 1 }, 1).expect("dictator");
    let character = CubeFunction::from_fn(1, |x| character(SubsetMask(1), x, b)).expect("character");
    for (name, f) in [("dictator n=1", dictator), ("character u_{1} n=1", character)] {
        let r = &level_transfer_checks(&f, b, DEFAULT_DENSE_CAP).expect("small reduction")[1];
        tally.check((r.lhs - r.rhs).abs() < 1e-12, || format!("equality case {name} t=1 m=2 d=1: {r}"));
    }
    tally.finish(3, "level-weight lower bound never violated")
}

/// Criterion 4: influence transfer bounds (sum, squares, per coordinate, first level).
pub fn influence_transfer() -> CriterionOutcome {
    let mut instances: Vec<Instance> = (0..=3).flat_map(exhaustive_monotone).collect();
    instances.extend(exhaustive_boolean(2));
    let parts: Vec<Tally> = biases(3)
        .into_par_iter()
        .map(|b| {
            let mut tally = Tally::default();
            for inst in &instances {
                let label = format!("{} {}", inst.label, bias_label(b));
                tally.report(&fk_bound_check(&inst.f, b).expect("boolean input"), &label);
                let squares = squares_bound_check(&inst.f, b).expect("boolean input");
                tally.report(&squares.aggregate, &label);
                for c in &squares.coordinates {
                    tally.check(c.holds, || format!("{label} coordinate block={} j={}: {} > {}", c.block, c.position, c.influence, c.bound));
                }
                tally.report(&first_level_transfer_check(&inst.f, b).expect("small reduction"), &label);
            }
            tally
        })
        .collect();
    merge_all(parts).finish(4, "influence transfer bounds")
}

/// The 20-point noise grid on `[0, sqrt(pL/(1-p))]`.
pub fn delta_grid(bias: DyadicBias, points: usize) -> Vec<f64> {
    let top = max_noise_rate(bias);
    if points <= 1 {
        return vec![0.0];
    }
    let last = points - 1;
    (0..points).map(|k| if k == last { top } else { top * k as f64 / last as f64 }).collect()
}

/// Criterion 5: biased hypercontractivity and the low-degree norm bound.
pub fn hypercontractivity(seed: u64) -> CriterionOutcome {
    let mut biased: Vec<Instance> = (0..=4).flat_map(exhaustive_boolean).collect();
    for n in 1..=4 {
        biased.extend(random(InstanceKind::RandomReal, n, cell_seed(seed, 5, n), 250));
    }
    let mut uniform: Vec<Instance> = Vec::new();
    for n in 5..=8 {
        uniform.extend(random(InstanceKind::RandomReal, n, cell_seed(seed, 5, n), 250));
        uniform.extend(random(InstanceKind::RandomBoolean, n, cell_seed(seed, 5, n) ^ 1, 50));
    }
    let mut jobs: Vec<(DyadicBias, &Instance)> = Vec::new();
    for b in biases(4) {
        jobs.extend(biased.iter().map(|inst| (b, inst)));
    }
    jobs.extend(uniform.iter().map(|inst| (DyadicBias::uniform(), inst)));
    let hyper = jobs
        .par_chunks(256)
        .map(|chunk| {
            let mut tally = Tally::default();
            for (b, inst) in chunk {
                let grid = delta_grid(*b, 20);
                for r in hypercontractivity_sweep(&inst.f, &grid, *b).expect("finite rates") {
                    tally.check(r.in_hypothesis, || format!("{} {} delta={:?} outside hypothesis", inst.label, bias_label(*b), r.param("delta")));
                    tally.report(&r, &format!("{} {}", inst.label, bias_label(*b)));
                }
            }
            tally
        })
        .collect::<Vec<_>>();
    let low_degree = biases(4)
        .into_par_iter()
        .map(|b| {
            let mut tally = Tally::default();
            for n in 1..=6u32 {
                for d in 0..=n.min(3) as usize {
                    let seed = cell_seed(seed, 50 + d as u64, n);
                    for inst in random(InstanceKind::RandomReal, n, seed, 10) {
                        let f = inverse_transform(&transform(&inst.f, b).truncate(d));
                        for q in [2.0, 2.5, 3.0, 4.0, 6.0] {
                            let label = format!("degree-{d} truncation of {} {}", inst.label, bias_label(b));
                            match low_degree_norm_check(&f, q, d, b) {
                                Ok(r) => tally.report(&r, &label),
                                Err(e) => tally.check(false, || format!("{label}: {e}")),
                            }
                        }
                    }
                }
            }
            tally
        })
        .collect::<Vec<_>>();
    merge_all(hyper).merge(merge_all(low_degree)).finish(5, "biased hypercontractivity and low-degree norms")
}

/// Criterion 6: the explicit transfer steps of the boundary inequality.
pub fn boundary_transfer() -> CriterionOutcome {
    let sets = exhaustive_monotone(3);
    let mut tally = Tally::default();
    for b in biases(3) {
        for inst in &sets {
            let mu = inst.f.expectation(b);
            if mu <= 0.0 || mu >= 1.0 {
                continue;
            }
            let r = talagrand_boundary_report(&inst.f, b, DEFAULT_ALPHA).expect("monotone nondegenerate set");
            let label = format!("{} {}", inst.label, bias_label(b));
            let steps = [&r.boundary_containment, &r.influence_sum_transfer];
            for step in steps {
                match step {
                    Some(s) => tally.report(s, &label),
                    None => tally.check(false, || format!("{label}: transfer step not evaluated")),
                }
            }
        }
    }
    tally.finish(6, "boundary transfer steps")
}

/// Criterion 7: binomial tightness columns against enumeration and the normal limit.
pub fn tightness() -> CriterionOutcome {
    let mut tally = Tally::default();
    for b in biases(4) {
        for n in 1..=12u32 {
            let table = threshold_tightness_table(u64::from(n), b).expect("n >= 1");
            let a = named_family(&Family::balanced_threshold(n, b), n).expect("threshold");
            let summary = boundary_sets(&a, b).expect("boolean");
            let label = format!("threshold n={n} k={} {}", table.k, bias_label(b));
            let exact = |q: &str| table.row(q).map(|r| r.exact).unwrap_or(f64::NAN);
            let pairs = [
                ("measure", table.measure_of_set, summary.measure_of_set),
                ("boundary", exact("boundary"), summary.boundary),
                ("direction", exact("direction"), summary.directions[0]),
                ("sum_direction_squares", exact("sum_direction_squares"), summary.direction_square_sum()),
                ("lhs_product", exact("lhs_product"), summary.boundary * summary.direction_sum()),
            ];
            for (name, binomial, enumerated) in pairs {
                tally.check((binomial - enumerated).abs() < 1e-12, || format!("{label} {name}: {binomial} vs {enumerated}"));
            }
        }
    }
    for (t, m) in [(1, 2), (1, 3)] {
        let b = DyadicBias::new(t, m).expect("valid");
        let table = threshold_tightness_table(10_000, b).expect("n >= 1");
        let ratio = |q: &str| table.row(q).map(|r| r.ratio).unwrap_or(f64::NAN);
        let boundary = ratio("boundary");
        let squares = ratio("sum_direction_squares");
        tally.check((0.95..=1.05).contains(&boundary), || format!("n=10000 {}: boundary ratio {boundary}", bias_label(b)));
        tally.check((0.9..=1.1).contains(&squares), || format!("n=10000 {}: squares ratio {squares}", bias_label(b)));
    }
    tally.finish(7, "threshold tightness table")
}

/// Criterion 8: first-level Parseval bound and Harris-Kleitman positivity.
pub fn parseval_and_correlation() -> CriterionOutcome {
    let functions = exhaustive_boolean(4);
    let sets = exhaustive_monotone(3);
    let parts: Vec<Tally> = biases(4)
        .into_par_iter()
        .map(|b| {
            let mut tally = Tally::default();
            for inst in &functions {
                let r = first_level_parseval_check(&inst.f, b).expect("boolean");
                tally.report(&r, &format!("{} {}", inst.label, bias_label(b)));
            }
            for a in &sets {
                for c in &sets {
                    let r = correlation_report(&a.f, &c.f, b).expect("monotone pair");
                    tally.report(&r.harris_kleitman, &format!("A={} B={} {}", a.label, c.label, bias_label(b)));
                }
            }
            tally
        })
        .collect();
    merge_all(parts).finish(8, "first-level Parseval bound and Harris-Kleitman")
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Criterion 9: structural invariants of the transform and the reduction.
pub fn structural(seed: u64) -> CriterionOutcome {
    let mut tally = Tally::default();
    let grid = biases(4);

    // Parseval, random f with n <= 6
    for &b in &grid {
        for n in 0..=6 {
            for inst in random(InstanceKind::RandomReal, n, cell_seed(seed, 90, n), 20) {
                let s = transform(&inst.f, b);
                let norm = q_norm(&inst.f, 2.0, b).expect("q = 2");
                tally.check((s.total_weight() - norm * norm).abs() < 1e-10, || format!("Parseval {} {}", inst.label, bias_label(b)));
            }
        }
    }

    // orthonormality, n <= 3
    for &b in &grid {
        for n in 0..=3u32 {
            let w = point_weights(n, b.into());
            for s in 0..1u64 << n {
                for r in 0..1u64 << n {
                    let inner: f64 = (0..1u64 << n)
                        .map(|x| {
                            w[x as usize] * character(SubsetMask(s), PointMask(x), b) * character(SubsetMask(r), PointMask(x), b)
                        })
                        .sum();
                    let expected = if s == r { 1.0 } else { 0.0 };
                    tally.check((inner - expected).abs() < 1e-10, || {
                        format!("orthonormality n={n} S={} R={} {}", SubsetMask(s), SubsetMask(r), bias_label(b))
                    });
                }
            }
        }
    }

    // round trip, random spectra at n = 6, p = 3/8
    let b = DyadicBias::new(3, 3).expect("p = 3/8");
    for inst in random(InstanceKind::RandomReal, 6, cell_seed(seed, 91, 6), 100) {
        let spectrum = Spectrum::new(6, b.into(), inst.f.values().to_vec()).expect("finite");
        let f = inverse_transform(&spectrum);
        let back = transform(&f, b);
        tally.check(max_diff(back.coeffs(), spectrum.coeffs()) < 1e-12, || format!("round trip (spectrum) {}", inst.label));
        let again = inverse_transform(&transform(&inst.f, b));
        tally.check(max_diff(again.values(), inst.f.values()) < 1e-12, || format!("round trip (function) {}", inst.label));
    }

    // E[g] = E[f] and ||g||_q = ||f||_q for mn <= 16
    for &b in &grid {
        for n in 1..=16 / b.m() {
            for inst in random(InstanceKind::RandomReal, n, cell_seed(seed, 92, n), 5) {
                let g = reduce(&inst.f, b).expect("mn <= 16");
                let g = g.dense().expect("dense");
                let label = format!("{} {}", inst.label, bias_label(b));
                let (eg, ef) = (g.expectation(Measure::Uniform), inst.f.expectation(b));
                tally.check((eg - ef).abs() < 1e-12, || format!("E[g] = E[f] {label}: {eg} vs {ef}"));
                for q in [1.0, 2.0, 3.0, 4.0] {
                    let (ng, nf) = (q_norm(g, q, Measure::Uniform).expect("q >= 1"), q_norm(&inst.f, q, b).expect("q >= 1"));
                    tally.check((ng - nf).abs() <= 1e-12f64.max(1e-9 * nf), || format!("||g||_{q} = ||f||_{q} {label}: {ng} vs {nf}"));
                }
            }
        }
    }

    // dual flip, exhaustive Boolean n <= 3 and random real
    for &b in &grid {
        let dual_measure = Measure::real(1.0 - b.p()).expect("p in (0, 1)");
        for n in 0..=3 {
            let mut instances = exhaustive_boolean(n);
            instances.extend(random(InstanceKind::RandomReal, n, cell_seed(seed, 93, n), 20));
            for inst in instances {
                let s = transform(&inst.f, b);
                let d = transform(&dual_function(&inst.f), dual_measure);
                let worst = s
                    .coeffs()
                    .iter()
                    .zip(d.coeffs())
                    .enumerate()
                    .map(|(k, (x, y))| (if k.count_ones() % 2 == 0 { *x } else { -x } - y).abs())
                    .fold(0.0, f64::max);
                tally.check(worst < 1e-10, || format!("dual flip {} {}", inst.label, bias_label(b)));
            }
        }
    }

    // transform against the independent naive sums
    for &b in &grid {
        for n in 0..=3 {
            let mut instances = exhaustive_boolean(n);
            instances.extend(random(InstanceKind::RandomReal, n, cell_seed(seed, 94, n), 100));
            for inst in instances {
                let fast = transform(&inst.f, b);
                let worst = (0..fast.coeffs().len())
                    .map(|s| (fast.coeffs()[s] - naive_coefficient(&inst.f, SubsetMask::from(s), b)).abs())
                    .fold(0.0, f64::max);
                tally.check(worst < 1e-10, || format!("naive coefficients {} {}", inst.label, bias_label(b)));
            }
        }
    }
    tally.finish(9, "structural invariants")
}

/// Criterion 10: sizes of the monotone enumerations.
pub fn dedekind() -> CriterionOutcome {
    let mut tally = Tally::default();
    for (n, expected) in [(3u32, 20usize), (4, 168), (5, 7581)] {
        let got = enumerate_monotone(n).expect("n <= 5").count();
        tally.check(got == expected, || format!("n={n}: {got} monotone functions, expected {expected}"));
    }
    tally.finish(10, "Dedekind counts")
}

/// Every criterion in order.
pub fn run_suite(seed: u64) -> Vec<CriterionOutcome> {
    vec![
        coefficient_prediction(seed),
        character_sums(),
        level_transfer(seed),
        influence_transfer(),
        hypercontractivity(seed),
        boundary_transfer(),
        tightness(),
        parseval_and_correlation(),
        structural(seed),
        dedekind(),
    ]
}
