// SPDX-License-Identifier: Apache-2.0

//! Primal-dual interior-point solver for [`ConicProblem`]s.
//!
//! [`solve`] runs [`presolve`], the path-following iteration on the reduced
//! program, and maps the result back so that the returned [`Solution`] is
//! stated for the original program.

mod ipm;
mod presolve;

pub use presolve::{presolve, PresolveMap, Presolved};

use crate::conic::{BlockSymMatrix, ConicProblem, Solution, SolveStatus};
use crate::error::{Error, Result};
use std::fmt::Write as _;

/// Interior-point settings.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SolverParams {
    pub gap_tol: f64,
    pub feas_tol: f64,
    pub max_iter: usize,
    pub step_fraction: f64,
    pub initial_scale: f64,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams { gap_tol: 1e-8, feas_tol: 1e-8, max_iter: 200, step_fraction: 0.98, initial_scale: 1.0 }
    }
}

impl SolverParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.gap_tol > 0.0 && self.feas_tol > 0.0) {
            return Err(Error::OutOfRange("solver tolerances must be positive".into()));
        }
        if !(self.step_fraction > 0.0 && self.step_fraction < 1.0) {
            return Err(Error::OutOfRange("step_fraction must lie in (0, 1)".into()));
        }
        if !(self.initial_scale > 0.0) || self.max_iter == 0 {
            return Err(Error::OutOfRange("initial_scale and max_iter must be positive".into()));
        }
        Ok(())
    }
}

/// One row of the iterate log.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterateRecord {
    pub iteration: usize,
    pub mu: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub primal_objective: f64,
    pub dual_objective: f64,
    pub step_primal: f64,
    pub step_dual: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct IterateLog {
    pub records: Vec<IterateRecord>,
}

impl IterateLog {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iteration,mu,primal_residual,dual_residual,primal_objective,dual_objective,step_primal,step_dual\n");
        for r in &self.records {
            writeln!(
                out,
                "{},{:e},{:e},{:e},{:e},{:e},{},{}",
                r.iteration,
                r.mu,
                r.primal_residual,
                r.dual_residual,
                r.primal_objective,
                r.dual_objective,
                r.step_primal,
                r.step_dual
            )
            .unwrap();
        }
        out
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Solves `p` and returns the primal-dual pair for the original program.
pub fn solve(p: &ConicProblem, params: &SolverParams) -> Solution {
    solve_logged(p, params).0
}

/// [`solve`], also returning the per-iteration log of the reduced program.
pub fn solve_logged(p: &ConicProblem, params: &SolverParams) -> (Solution, IterateLog) {
    let mut log = IterateLog::default();
    if params.validate().is_err() {
        return (failed(p, SolveStatus::NumericalFailure), log);
    }
    let reduced = match presolve(p) {
        Ok(r) => r,
        Err(status) => return (failed(p, status), log),
    };
    let inner = match reduced.problem.as_ref() {
        Some(q) => ipm::run(q, params, &mut log),
        None => ipm::trivial(&reduced),
    };
    let (x, y) = reduced.map.postsolve(p, &inner.x, &inner.y);
    let primal_value = p.primal_objective(&x);
    let dual_value = p.dual_objective(&y);
    let sol = Solution { x, y, status: inner.status, primal_value, dual_value, gap: dual_value - primal_value };
    (sol, log)
}

fn failed(p: &ConicProblem, status: SolveStatus) -> Solution {
    let x = BlockSymMatrix::zeros(p.cone());
    let y = vec![0.0; p.num_constraints()];
    Solution {
        primal_value: p.primal_objective(&x),
        dual_value: p.dual_objective(&y),
        gap: f64::NAN,
        x,
        y,
        status,
    }
}
