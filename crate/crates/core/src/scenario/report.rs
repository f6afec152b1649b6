use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::verify::{Claim, Expect, Numeric, DEFAULT_POINTS};

use super::checks::{info, run_check};
use super::Scenario;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimReport {
    pub label: String,
    pub expect: Expect,
    /// Whether `lhs = rhs` holds exactly.
    pub exact: bool,
    pub ok: bool,
    /// First nonzero component of `lhs - rhs`, if any.
    pub residual: Option<String>,
    pub numeric: Numeric,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub index: usize,
    pub line: usize,
    pub check: String,
    pub about: String,
    pub verdict: Verdict,
    pub error: Option<String>,
    pub claims: Vec<ClaimReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub alpha: u64,
    pub beta: u64,
    pub sigma: String,
    pub seed: u64,
    pub points: usize,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

fn claim_seed(seed: u64, check: usize, claim: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((check as u64) << 20)
        .wrapping_add(claim as u64)
}

fn claim_report(claim: &Claim, seed: u64) -> ClaimReport {
    let numeric = claim.corroborate(seed, DEFAULT_POINTS);
    let exact = claim.holds();
    ClaimReport {
        label: claim.label.clone(),
        expect: claim.expect,
        exact,
        ok: claim.as_expected() && numeric.consistent,
        residual: claim.first_difference(),
        numeric,
    }
}

pub(super) fn run(s: &Scenario, seed: u64) -> Report {
    let checks: Vec<CheckReport> = s
        .checks
        .par_iter()
        .enumerate()
        .map(|(index, req)| {
            let about = info(&req.name).map(|i| i.about).unwrap_or_default().to_string();
            let (verdict, error, claims) = match run_check(s, req) {
                Err(e) => (Verdict::Error, Some(e.to_string()), Vec::new()),
                Ok(claims) => {
                    let reports: Vec<ClaimReport> = claims
                        .par_iter()
                        .enumerate()
                        .map(|(k, c)| claim_report(c, claim_seed(seed, index, k)))
                        .collect();
                    let verdict = if !reports.is_empty() && reports.iter().all(|r| r.ok) {
                        Verdict::Pass
                    } else {
                        Verdict::Fail
                    };
                    (verdict, None, reports)
                }
            };
            CheckReport {
                index: index + 1,
                line: req.line,
                check: req.text.clone(),
                about,
                verdict,
                error,
                claims,
            }
        })
        .collect();
    Report {
        scenario: s.name.clone(),
        alpha: s.params.alpha(),
        beta: s.params.beta(),
        sigma: s.params.sigma().to_string(),
        seed,
        points: DEFAULT_POINTS,
        passed: checks.iter().all(|c| c.verdict == Verdict::Pass),
        checks,
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "scenario {} (alpha = {}, beta = {}, sigma = {}, seed = {})",
            self.scenario, self.alpha, self.beta, self.sigma, self.seed
        );
        for c in &self.checks {
            let tag = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Error => "ERROR",
            };
            let _ = writeln!(out, "{tag:<5} [{}] {}: {}", c.index, c.check, c.about);
            if let Some(e) = &c.error {
                let _ = writeln!(out, "      error: {e}");
            }
            for r in &c.claims {
                let mark = if r.ok { "ok" } else { "BAD" };
                let want = match r.expect {
                    Expect::Zero => "holds",
                    Expect::Nonzero => "differs",
                };
                let _ = writeln!(
                    out,
                    "      {mark:<3} {} (expected: {want}; exact: {}; numeric max diff {:.3e} over {} points)",
                    r.label,
                    if r.exact { "holds" } else { "differs" },
                    r.numeric.max_abs_diff,
                    r.numeric.points
                );
                if let (Some(res), false) = (&r.residual, r.ok && r.expect == Expect::Nonzero) {
                    let _ = writeln!(out, "          lhs - rhs: {res}");
                }
            }
        }
        let passed = self.checks.iter().filter(|c| c.verdict == Verdict::Pass).count();
        let _ = writeln!(
            out,
            "{}: {passed}/{} checks passed",
            if self.passed { "PASSED" } else { "FAILED" },
            self.checks.len()
        );
        out
    }
}
