// SPDX-License-Identifier: Apache-2.0

use crate::conic::{duality_report, ConicProblem, DualityReport, Solution, SolveStatus};
use crate::error::{Error, Result};
use crate::solver::{solve, SolverParams};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

/// Default margin added before flooring a bound.
pub const DEFAULT_ROUND_MARGIN: f64 = 1e-6;

/// Which program produced a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Delsarte,
    Schrijver,
    ThetaPrimeUnreduced,
    SchrijverUnreduced,
    /// ϑ′ of an explicit graph
    ThetaPrime,
    Lasserre(u32),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Delsarte => write!(f, "delsarte"),
            Method::Schrijver => write!(f, "schrijver"),
            Method::ThetaPrimeUnreduced => write!(f, "theta-prime-unreduced"),
            Method::SchrijverUnreduced => write!(f, "schrijver-unreduced"),
            Method::ThetaPrime => write!(f, "theta-prime"),
            Method::Lasserre(t) => write!(f, "lasserre-{t}"),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "delsarte" => Method::Delsarte,
            "schrijver" => Method::Schrijver,
            "theta-prime-unreduced" => Method::ThetaPrimeUnreduced,
            "schrijver-unreduced" => Method::SchrijverUnreduced,
            "theta-prime" => Method::ThetaPrime,
            other => match other.strip_prefix("lasserre-").map(str::parse::<u32>) {
                Some(Ok(t)) if t >= 1 => Method::Lasserre(t),
                _ => return Err(Error::OutOfRange(format!("unknown method {other:?}"))),
            },
        })
    }
}

impl serde::Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Method {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Solver settings plus the rounding margin.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BoundParams {
    pub solver: SolverParams,
    pub round_margin: f64,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams { solver: SolverParams::default(), round_margin: DEFAULT_ROUND_MARGIN }
    }
}

/// One computed bound. For explicit graphs `n` is the vertex count and `d` is 0.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BoundResult {
    pub n: u32,
    pub d: u32,
    pub method: Method,
    /// upper-side objective value
    pub value: f64,
    /// `floor(value + round_margin)`
    pub integer_bound: u64,
    /// dual − primal objective
    pub gap: f64,
    pub status: SolveStatus,
    #[serde(with = "duration_secs")]
    pub wall_time: Duration,
}

mod duration_secs {
    use std::time::Duration;

    pub fn serialize<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let secs = <f64 as serde::Deserialize>::deserialize(d)?;
        Duration::try_from_secs_f64(secs).map_err(serde::de::Error::custom)
    }
}

/// A bound together with the solver output it came from.
#[derive(Clone, Debug)]
pub struct BoundRun {
    pub result: BoundResult,
    pub solution: Solution,
    pub report: DualityReport,
}

impl BoundRun {
    /// The result when the solver reached optimality, else a solver error.
    pub fn into_result(self) -> Result<BoundResult> {
        match self.result.status {
            SolveStatus::Optimal => Ok(self.result),
            s => Err(Error::Solver(format!("{} n={} d={}: status {s}", self.result.method, self.result.n, self.result.d))),
        }
    }
}

/// `floor(value + margin)`. This is a numerical bound: it trusts the solver
/// value up to `margin` and is not a rational certificate.
pub fn round_bound(value: f64, margin: f64) -> Result<u64> {
    if !(value >= 0.0) || !value.is_finite() {
        return Err(Error::OutOfRange(format!("cannot round bound value {value}")));
    }
    Ok((value + margin).floor() as u64)
}

/// Which side of the conic program carries the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    /// program is `max ⟨C, X⟩`; the bound is the dual objective
    Primal,
    /// program is an LMI maximization encoded on the dual side; the bound
    /// is the negated primal objective
    Lmi,
}

pub(crate) fn run_program(
    p: &ConicProblem,
    side: Side,
    n: u32,
    d: u32,
    method: Method,
    params: &BoundParams,
) -> Result<BoundRun> {
    let start = Instant::now();
    let solution = solve(p, &params.solver);
    let wall_time = start.elapsed();
    let report = duality_report(p, &solution)?;
    let value = match side {
        Side::Primal => solution.dual_value,
        Side::Lmi => -solution.primal_value,
    };
    let integer_bound = if solution.status == SolveStatus::Optimal { round_bound(value.max(0.0), params.round_margin)? } else { 0 };
    let result = BoundResult { n, d, method, value, integer_bound, gap: solution.gap, status: solution.status, wall_time };
    Ok(BoundRun { result, solution, report })
}
