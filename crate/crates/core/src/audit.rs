// SPDX-License-Identifier: Apache-2.0

//! Self-checks that compare the symmetry-reduced programs against their
//! unreduced forms, map greedy codes to feasible points, and verify the
//! algebra tables exactly.

use crate::algebra::{dimension_identity, krawtchouk_eigen_check, phi_homomorphism_check};
use crate::bounds::{
    code_to_lp_point, code_to_sdp_point, delsarte_lp, schrijver_sdp, schrijver_unreduced, theta_prime_unreduced,
    BoundParams, MAX_CERTIFICATE_LENGTH, MAX_SCHRIJVER_UNREDUCED_LENGTH, MAX_THETA_UNREDUCED_LENGTH,
};
use crate::error::{Error, Result};
use crate::hamming::greedy_code;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Reduced and unreduced values must agree to this.
pub const REDUCTION_TOL: f64 = 1e-5;
/// Certificate objectives must equal the code size to this.
pub const CERTIFICATE_TOL: f64 = 1e-9;
pub const ALGEBRA_EIGEN_MAX: u32 = 6;
pub const ALGEBRA_PHI_MAX: u32 = 5;
pub const ALGEBRA_PHI_TRIALS: usize = 100;
pub const ALGEBRA_DIMENSION_MAX: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Reductions,
    Certificates,
    Algebra,
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Reductions => "reductions",
            Suite::Certificates => "certificates",
            Suite::Algebra => "algebra",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reductions" => Ok(Suite::Reductions),
            "certificates" => Ok(Suite::Certificates),
            "algebra" => Ok(Suite::Algebra),
            "all" => Ok(Suite::All),
            other => Err(Error::OutOfRange(format!("unknown suite '{other}'"))),
        }
    }
}

/// One named check with its measured discrepancy, if any.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditCheck {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub residual: Option<f64>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, suite: Suite, name: String, outcome: Result<(f64, f64)>) {
        let check = match outcome {
            Ok((residual, tol)) => AuditCheck {
                suite,
                name,
                passed: residual <= tol,
                residual: Some(residual),
                detail: format!("tolerance {tol:e}"),
            },
            Err(e) => AuditCheck { suite, name, passed: false, residual: None, detail: e.to_string() },
        };
        self.checks.push(check);
    }

    fn push_exact(&mut self, suite: Suite, name: String, outcome: Result<String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(AuditCheck { suite, name, passed, residual: None, detail });
    }
}

pub fn run_suite(suite: Suite, params: &BoundParams) -> AuditReport {
    let mut report = AuditReport::default();
    if matches!(suite, Suite::Reductions | Suite::All) {
        reductions(params, &mut report);
    }
    if matches!(suite, Suite::Certificates | Suite::All) {
        certificates(&mut report);
    }
    if matches!(suite, Suite::Algebra | Suite::All) {
        algebra(&mut report);
    }
    report
}

fn reductions(params: &BoundParams, report: &mut AuditReport) {
    for n in 2..=MAX_THETA_UNREDUCED_LENGTH {
        for d in 2..=n {
            let r = delsarte_lp(n, d, params)
                .and_then(|a| Ok((a.value - theta_prime_unreduced(n, d, params)?.value).abs()));
            report.push(Suite::Reductions, format!("delsarte-vs-theta-prime n={n} d={d}"), r.map(|x| (x, REDUCTION_TOL)));
        }
    }
    for n in 1..=MAX_SCHRIJVER_UNREDUCED_LENGTH {
        for d in 1..=n {
            let r = schrijver_sdp(n, d, params)
                .and_then(|a| Ok((a.value - schrijver_unreduced(n, d, params)?.value).abs()));
            report.push(Suite::Reductions, format!("schrijver-vs-unreduced n={n} d={d}"), r.map(|x| (x, REDUCTION_TOL)));
        }
    }
}

fn certificates(report: &mut AuditReport) {
    for n in 1..=MAX_CERTIFICATE_LENGTH {
        for d in 1..=n {
            let code = greedy_code(n, d);
            let lp = code.clone().and_then(|c| {
                let p = code_to_lp_point(&c, d)?;
                Ok(((p.objective - c.len() as f64).abs(), CERTIFICATE_TOL * c.len() as f64))
            });
            report.push(Suite::Certificates, format!("lp-point n={n} d={d}"), lp);
            let sdp = code.and_then(|c| {
                let p = code_to_sdp_point(&c, d)?;
                Ok(((p.check.objective - c.len() as f64).abs(), CERTIFICATE_TOL * c.len() as f64))
            });
            report.push(Suite::Certificates, format!("sdp-point n={n} d={d}"), sdp);
        }
    }
}

fn algebra(report: &mut AuditReport) {
    for n in 1..=ALGEBRA_EIGEN_MAX {
        let r = krawtchouk_eigen_check(n).map(|()| format!("{} characters", 1u32 << n));
        report.push_exact(Suite::Algebra, format!("krawtchouk-eigenvalues n={n}"), r);
    }
    for n in 1..=ALGEBRA_PHI_MAX {
        let r = phi_homomorphism_check(n, ALGEBRA_PHI_TRIALS, u64::from(n)).map(|h| {
            format!("{} products, {} transposes, unit checked", h.products_checked, h.transposes_checked)
        });
        report.push_exact(Suite::Algebra, format!("phi-homomorphism n={n}"), r);
    }
    let bad: Vec<u32> = (0..=ALGEBRA_DIMENSION_MAX).filter(|&n| !dimension_identity(n)).collect();
    let r = if bad.is_empty() {
        Ok(format!("n = 0..={ALGEBRA_DIMENSION_MAX}"))
    } else {
        Err(Error::Verification(format!("dimension identity fails for n in {bad:?}")))
    };
    report.push_exact(Suite::Algebra, "dimension-identity".into(), r);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Reductions, Suite::Certificates, Suite::Algebra, Suite::All] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn certificates_pass() {
        let report = run_suite(Suite::Certificates, &BoundParams::default());
        assert_eq!(report.checks.len(), 2 * (1..=MAX_CERTIFICATE_LENGTH).sum::<u32>() as usize);
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn failures_are_recorded() {
        let mut report = AuditReport::default();
        report.push(Suite::Reductions, "ok".into(), Ok((1e-7, 1e-5)));
        report.push(Suite::Reductions, "loose".into(), Ok((1e-3, 1e-5)));
        report.push(Suite::Reductions, "err".into(), Err(Error::Solver("stalled".into())));
        assert!(!report.passed());
        let names: Vec<_> = report.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["loose", "err"]);
    }
}
