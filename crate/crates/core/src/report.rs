//! Structured records of identity checks.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

/// One side of a checked identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Complex { re: f64, im: f64 },
    Exact(String),
    List(Vec<Value>),
    Missing,
}

impl From<Complex64> for Value {
    fn from(c: Complex64) -> Self {
        Value::Complex { re: c.re, im: c.im }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Complex { re: x, im: 0.0 }
    }
}

impl From<&BigRational> for Value {
    fn from(r: &BigRational) -> Self {
        Value::Exact(r.to_string())
    }
}

impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(v: Vec<T>) -> Self {
        Value::List(v.into_iter().map(Into::into).collect())
    }
}

/// Result of one identity check. Field order is fixed so serialized reports diff cleanly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub params: BTreeMap<String, String>,
    pub lhs: Value,
    pub rhs: Value,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: Option<u64>,
    pub diagnostics: BTreeMap<String, serde_json::Value>,
}

impl VerificationReport {
    pub fn new(check_id: impl Into<String>) -> Self {
        Self {
            check_id: check_id.into(),
            params: BTreeMap::new(),
            lhs: Value::Missing,
            rhs: Value::Missing,
            abs_err: 0.0,
            rel_err: 0.0,
            tolerance: 0.0,
            pass: false,
            seed: None,
            diagnostics: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn diag(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.diagnostics.insert(key.to_string(), v);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Fills both sides and passes iff `rel_err <= tol`; the relative error is taken against `|rhs|`
    /// unless that vanishes, in which case the absolute error is used.
    pub fn compare(mut self, lhs: Complex64, rhs: Complex64, tol: f64) -> Self {
        let abs = (lhs - rhs).norm();
        let scale = rhs.norm();
        self.lhs = lhs.into();
        self.rhs = rhs.into();
        self.abs_err = abs;
        self.rel_err = if scale > 0.0 { abs / scale } else { abs };
        self.tolerance = tol;
        self.pass = self.rel_err <= tol;
        self
    }

    /// Passes iff `abs_err <= tol`; `rel_err` is still recorded.
    pub fn compare_abs(self, lhs: Complex64, rhs: Complex64, tol: f64) -> Self {
        let mut r = self.compare(lhs, rhs, tol);
        r.pass = r.abs_err <= tol;
        r
    }

    /// Exact check: passes iff every residual is zero.
    pub fn exact(mut self, lhs: Value, rhs: Value, max_residual: f64, all_zero: bool) -> Self {
        self.lhs = lhs;
        self.rhs = rhs;
        self.abs_err = max_residual;
        self.rel_err = max_residual;
        self.tolerance = 0.0;
        self.pass = all_zero;
        self
    }

    /// Marks the report as failed with a reason.
    pub fn fail(mut self, reason: impl ToString) -> Self {
        self.pass = false;
        self.diagnostics
            .insert("failure".into(), serde_json::Value::String(reason.to_string()));
        self
    }
}

/// A report document: the individual reports plus pass/fail counts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub reports: Vec<VerificationReport>,
    pub summary: Summary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl ReportDocument {
    pub fn new(reports: Vec<VerificationReport>) -> Self {
        let passed = reports.iter().filter(|r| r.pass).count();
        Self {
            summary: Summary {
                total: reports.len(),
                passed,
                failed: reports.len() - passed,
            },
            reports,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
