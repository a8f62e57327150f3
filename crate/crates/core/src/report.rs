//! Check records and aggregation.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub reference: String,
    pub status: Status,
    pub residual: String,
    /// Seconds.
    pub wall_time: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(checks: Vec<CheckResult>) -> Self {
        Report { version: REPORT_VERSION, checks }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let st = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{st}  {:<40} {:>9.3}s  {}\n", c.check_id, c.wall_time, shorten(&c.residual, 160)));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

fn shorten(s: &str, max: usize) -> String {
    match s.char_indices().nth(max) {
        None => s.to_string(),
        Some((i, _)) => format!("{} ...", &s[..i]),
    }
}

/// Run one check, timing it and turning errors and panics into failures.
///
/// The closure returns `(passed, residual)`.
pub fn run_check(id: &str, reference: &str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let (ok, residual) = match outcome {
        Ok(Ok((ok, r))) => (ok, r),
        Ok(Err(e)) => (false, format!("error: {e}")),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (false, format!("crashed: {msg}"))
        }
    };
    CheckResult {
        check_id: id.to_string(),
        reference: reference.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        residual,
        wall_time: start.elapsed().as_secs_f64(),
    }
}

/// `(true, "0")` when every named residual is empty, else the first
/// offending name and value.
pub fn zero_residuals<T: ToString>(items: &[(String, T, bool)]) -> (bool, String) {
    match items.iter().find(|(_, _, zero)| !zero) {
        None => (true, "0".into()),
        Some((name, r, _)) => (false, format!("{name}: {}", r.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn isolates_errors_and_panics() {
        let ok = run_check("a", "", || Ok((true, "0".into())));
        assert!(ok.passed());
        let err = run_check("b", "", || Err(Error::Verification("boom".into())));
        assert!(!err.passed());
        assert!(err.residual.contains("boom"));
        let crash = run_check("c", "", || panic!("bad index"));
        assert!(!crash.passed());
        assert!(crash.residual.contains("bad index"));
    }

    #[test]
    fn text_residuals_are_shortened() {
        let r = Report::new(vec![run_check("x", "", || Ok((false, "⊗".repeat(500))))]);
        let text = r.render_text();
        assert!(text.contains("..."));
        assert!(text.lines().next().unwrap().chars().count() < 250);
    }

    #[test]
    fn json_roundtrip() {
        let r = Report::new(vec![run_check("x", "ref", || Ok((true, "0".into())))]);
        let s = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back.checks[0].check_id, "x");
        assert!(s.contains("\"status\":\"pass\""));
    }
}
