//! One evaluated inequality instance.

use alloc::vec::Vec;
use core::fmt;

/// Rounding allowance, relative to `max(1, |lhs|, |rhs|)`, given to "holds".
pub const VERDICT_SLACK: f64 = 1e-12;

/// Direction of an explicit inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `lhs <= rhs`.
    AtMost,
    /// `lhs >= rhs`.
    AtLeast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    /// The statement carries an unspecified constant; only the ratio is meaningful.
    RatioOnly,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::RatioOnly => "ratio-only",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Left side, right side (constant-free where the statement has an unknown
/// constant), their ratio and a verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct InequalityReport {
    pub name: &'static str,
    pub params: Vec<(&'static str, f64)>,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    /// `lhs / rhs`, or `None` when the right side is zero or not finite.
    pub ratio: Option<f64>,
    pub verdict: Verdict,
    /// False when the inputs fall outside the statement's hypothesis.
    pub in_hypothesis: bool,
}

impl InequalityReport {
    /// An inequality without unknown constants; the verdict is decided here.
    pub fn explicit(name: &'static str, relation: Relation, lhs: f64, rhs: f64) -> Self {
        let slack = VERDICT_SLACK * 1f64.max(lhs.abs()).max(rhs.abs());
        let holds = match relation {
            Relation::AtMost => lhs <= rhs + slack,
            Relation::AtLeast => lhs + slack >= rhs,
        };
        let verdict = if holds { Verdict::Holds } else { Verdict::Violated };
        Self { name, params: Vec::new(), lhs, rhs, relation, ratio: ratio(lhs, rhs), verdict, in_hypothesis: true }
    }

    /// A statement with an unspecified constant: never claims a violation.
    pub fn ratio_only(name: &'static str, relation: Relation, lhs: f64, rhs: f64) -> Self {
        Self {
            name,
            params: Vec::new(),
            lhs,
            rhs,
            relation,
            ratio: ratio(lhs, rhs),
            verdict: Verdict::RatioOnly,
            in_hypothesis: true,
        }
    }

    pub fn with_param(mut self, key: &'static str, value: f64) -> Self {
        self.params.push((key, value));
        self
    }

    pub fn with_hypothesis(mut self, in_hypothesis: bool) -> Self {
        self.in_hypothesis = in_hypothesis;
        self
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }

    /// A violated explicit verdict whose inputs satisfy the hypothesis.
    pub fn is_violation(&self) -> bool {
        self.verdict == Verdict::Violated && self.in_hypothesis
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

fn ratio(lhs: f64, rhs: f64) -> Option<f64> {
    (rhs != 0.0 && rhs.is_finite() && lhs.is_finite()).then(|| lhs / rhs)
}

impl fmt::Display for InequalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.relation {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
        };
        write!(f, "{}: {:.6e} {} {:.6e} [{}]", self.name, self.lhs, op, self.rhs, self.verdict)?;
        if !self.in_hypothesis {
            f.write_str(" (outside hypothesis)")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slack_absorbs_rounding() {
        assert!(InequalityReport::explicit("x", Relation::AtMost, 1.0 + 1e-14, 1.0).holds());
        assert!(!InequalityReport::explicit("x", Relation::AtMost, 1.0 + 1e-9, 1.0).holds());
        assert!(InequalityReport::explicit("x", Relation::AtLeast, -1e-15, 0.0).holds());
        assert!(InequalityReport::explicit("x", Relation::AtLeast, -1e-6, 0.0).is_violation());
    }

    #[test]
    fn ratio_only_never_violates() {
        let r = InequalityReport::ratio_only("c", Relation::AtLeast, 0.0, 5.0);
        assert_eq!(r.verdict, Verdict::RatioOnly);
        assert_eq!(r.ratio, Some(0.0));
        assert!(!r.is_violation());
        assert_eq!(InequalityReport::ratio_only("c", Relation::AtLeast, 1.0, 0.0).ratio, None);
    }

    #[test]
    fn outside_hypothesis_is_not_a_violation() {
        let r = InequalityReport::explicit("h", Relation::AtMost, 2.0, 1.0).with_hypothesis(false);
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(!r.is_violation());
    }
}
