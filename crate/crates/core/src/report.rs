//! Pass/fail records for named checks, with JSON and text rendering.

use std::fmt;

use serde_json::{json, Value};

use crate::rational::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub n: usize,
    pub w: Option<Rational>,
    pub status: Status,
    /// Offending operator or tensor when a check fails, or a certificate.
    pub witness: Option<Value>,
    pub detail: String,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, n: usize, ok: bool) -> Self {
        CheckReport {
            check: check.into(),
            n,
            w: None,
            status: Status::from_bool(ok),
            witness: None,
            detail: String::new(),
        }
    }

    pub fn at_weight(mut self, w: &Rational) -> Self {
        self.w = Some(w.clone());
        self
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "check": self.check,
            "n": self.n,
            "status": self.status.as_str(),
        });
        if let Some(w) = &self.w {
            v["w"] = json!(format_rational(w));
        }
        if let Some(wit) = &self.witness {
            v["witness"] = wit.clone();
        }
        if !self.detail.is_empty() {
            v["detail"] = json!(self.detail);
        }
        v
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "[{tag}] {} (n={}", self.check, self.n)?;
        if let Some(w) = &self.w {
            write!(f, ", w={}", format_rational(w))?;
        }
        write!(f, ")")?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Reports sorted by check name, as JSON.
pub fn to_json(reports: &[CheckReport]) -> Value {
    let passed = reports.iter().filter(|r| r.passed()).count();
    json!({
        "passed": passed,
        "failed": reports.len() - passed,
        "checks": reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
    })
}

/// One line per report plus a summary line.
pub fn to_text(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    out.push_str(&format!("{passed}/{} checks passed\n", reports.len()));
    out
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn json_shape() {
        let r = CheckReport::new("laplacian", 3, true).at_weight(&rat(-1, 2));
        assert_eq!(r.to_json(), json!({"check": "laplacian", "n": 3, "w": "-1/2", "status": "pass"}));
        assert_eq!(r.to_string(), "[PASS] laplacian (n=3, w=-1/2)");
    }
}
