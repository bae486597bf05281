use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::C64;

/// How `abs_err`/`rel_err` are turned into `pass`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TolerancePolicy {
    /// `abs_err ≤ tol` or `rel_err ≤ tol`.
    Either,
    /// `rel_err ≤ tol` only; `0/0` counts as zero.
    Relative,
    /// `lhs ≤ rhs` up to `tol` relative slack; errors measure the violation.
    AtMost,
    /// `lhs ≥ rhs` up to `tol` relative slack; errors measure the violation.
    AtLeast,
}

impl fmt::Display for TolerancePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TolerancePolicy::Either => "abs-or-rel",
            TolerancePolicy::Relative => "rel",
            TolerancePolicy::AtMost => "lhs<=rhs",
            TolerancePolicy::AtLeast => "lhs>=rhs",
        })
    }
}

/// A recorded input of a check.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Real(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Real(v)
    }
}

impl From<usize> for Param {
    fn from(v: usize) -> Self {
        Param::Int(v as i64)
    }
}

impl From<u32> for Param {
    fn from(v: u32) -> Self {
        Param::Int(v as i64)
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_string())
    }
}

impl From<String> for Param {
    fn from(v: String) -> Self {
        Param::Text(v)
    }
}

/// Outcome of one identity check.
///
/// `pass ⇔` the policy holds for `(abs_err, rel_err, tolerance)`, unless
/// `inconclusive` is set, in which case `pass` is `false` and the report
/// is not a failure either.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub identity_id: String,
    pub params: BTreeMap<String, Param>,
    pub lhs: C64,
    pub rhs: C64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub policy: TolerancePolicy,
    pub pass: bool,
    pub inconclusive: bool,
    pub seed: Option<u64>,
    /// Auxiliary sequence (e.g. the growth witness values).
    pub series: Vec<f64>,
    pub notes: String,
}

impl VerificationReport {
    /// Compares `lhs` with `rhs` under `policy`.
    pub fn compare(identity_id: &str, lhs: C64, rhs: C64, tolerance: f64, policy: TolerancePolicy) -> Self {
        let (abs_err, rel_err) = errors(lhs, rhs, policy);
        let pass = match policy {
            TolerancePolicy::Either => abs_err <= tolerance || rel_err <= tolerance,
            _ => rel_err <= tolerance,
        };
        VerificationReport {
            identity_id: identity_id.to_string(),
            params: BTreeMap::new(),
            lhs,
            rhs,
            abs_err,
            rel_err,
            tolerance,
            policy,
            pass,
            inconclusive: false,
            seed: None,
            series: Vec::new(),
            notes: alloc::format!("policy: {policy}"),
        }
    }

    pub fn with_param(mut self, name: &str, value: impl Into<Param>) -> Self {
        self.params.insert(name.to_string(), value.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_series(mut self, series: Vec<f64>) -> Self {
        self.series = series;
        self
    }

    pub fn note(mut self, text: &str) -> Self {
        self.notes.push_str("; ");
        self.notes.push_str(text);
        self
    }

    /// Forces failure with a reason, for conditions outside the comparison.
    pub fn fail(mut self, reason: &str) -> Self {
        self.pass = false;
        self.note(reason)
    }

    pub fn mark_inconclusive(mut self, reason: &str) -> Self {
        self.pass = false;
        self.inconclusive = true;
        self.note(reason)
    }

    /// Margin `tolerance − rel_err`; negative means failure.
    pub fn margin(&self) -> f64 {
        self.tolerance - self.rel_err
    }

    /// Error relative to the allowance; larger is worse.
    pub fn severity(&self) -> f64 {
        let r = match self.policy {
            TolerancePolicy::Either => self.abs_err.min(self.rel_err),
            _ => self.rel_err,
        };
        if self.tolerance > 0.0 {
            r / self.tolerance
        } else if r > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }

    /// Counts as a failure: not passing and not inconclusive.
    pub fn failed(&self) -> bool {
        !self.pass && !self.inconclusive
    }
}

fn errors(lhs: C64, rhs: C64, policy: TolerancePolicy) -> (f64, f64) {
    let abs_err = match policy {
        TolerancePolicy::AtMost => (lhs.re - rhs.re).max(0.0),
        TolerancePolicy::AtLeast => (rhs.re - lhs.re).max(0.0),
        _ => (lhs - rhs).norm(),
    };
    let scale = match policy {
        TolerancePolicy::AtMost | TolerancePolicy::AtLeast => rhs.re.abs(),
        _ => rhs.norm(),
    };
    let rel_err = if abs_err == 0.0 {
        0.0
    } else if scale == 0.0 || abs_err.is_nan() {
        f64::INFINITY
    } else {
        abs_err / scale
    };
    (abs_err, rel_err)
}

/// Keeps the worst of a batch of reports (inconclusive ones only when all
/// are inconclusive) and records the batch size and counts.
pub fn worst_of(reports: Vec<VerificationReport>) -> Option<VerificationReport> {
    let total = reports.len();
    let inconclusive = reports.iter().filter(|r| r.inconclusive).count();
    let failed = reports.iter().filter(|r| r.failed()).count();
    let mut worst: Option<(usize, VerificationReport)> = None;
    for (i, r) in reports.into_iter().enumerate() {
        let replace = match &worst {
            None => true,
            Some((_, w)) => match (w.inconclusive, r.inconclusive) {
                (true, false) => true,
                (false, true) => false,
                _ => (r.failed(), r.severity()) > (w.failed(), w.severity()),
            },
        };
        if replace {
            worst = Some((i, r));
        }
    }
    worst.map(|(i, r)| {
        r.with_param("instances", total)
            .with_param("worst_instance", i)
            .with_param("inconclusive_instances", inconclusive)
            .with_param("failed_instances", failed)
    })
}
