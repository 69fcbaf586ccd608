// SPDX-License-Identifier: Apache-2.0

use super::result::{run_program, BoundParams, BoundResult, BoundRun, Method, Side};
use crate::algebra::{binom, KrawtchoukTable};
use crate::conic::{BlockSymMatrix, ConeSpec, ConicProblem, Constraint, SparseBlockSym};
use crate::error::{Error, Result};
use crate::hamming::{distance_counts, Code};
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Largest length accepted by the linear program.
pub const MAX_DELSARTE_LENGTH: u32 = 64;

fn check_nd(n: u32, d: u32) -> Result<()> {
    if n == 0 || n > MAX_DELSARTE_LENGTH || d == 0 || d > n {
        return Err(Error::OutOfRange(format!("need 1 ≤ d ≤ n ≤ {MAX_DELSARTE_LENGTH}, got n = {n}, d = {d}")));
    }
    Ok(())
}

/// `K_r(j) / C(n, r)` for all r, j.
fn normalized_krawtchouk(n: u32) -> Vec<Vec<f64>> {
    let k = KrawtchoukTable::new(n);
    (0..=n)
        .map(|r| {
            let c = binom(n as i64, r as i64);
            (0..=n)
                .map(|j| BigRational::new(k.get(r, j).clone(), c.clone()).to_f64().expect("bounded by 1"))
                .collect()
        })
        .collect()
}

/// Sphere-packing bound `2ⁿ / V(n, ⌊(d−1)/2⌋)`, used as the unit of the
/// LP unknowns so that they stay of order one.
pub fn sphere_packing_bound(n: u32, d: u32) -> f64 {
    let ball: f64 = (0..=(d as i64 - 1) / 2).map(|i| binom(n as i64, i).to_f64().expect("finite")).sum();
    2f64.powi(n as i32) / ball
}

/// The LP in distance-distribution unknowns `a_r = 2ⁿ C(n,r) x_r`:
/// maximize `1 + Σ_{r ≥ d} a_r` over `a ≥ 0` with slack rows
/// `1 + Σ_{r ≥ d} a_r K_r(j)/C(n,r) = s_j ≥ 0`.
///
/// The orthant holds `a_d..a_n` and then `s_0..s_n`, all divided by
/// [`sphere_packing_bound`].
pub fn build_delsarte(n: u32, d: u32) -> Result<ConicProblem> {
    check_nd(n, d)?;
    let q = normalized_krawtchouk(n);
    let unit = sphere_packing_bound(n, d);
    let na = (n - d + 1) as usize;
    let ns = (n + 1) as usize;
    let cone = ConeSpec::orthant(na + ns);
    let mut c = vec![0.0; na + ns];
    c[..na].fill(unit);
    let objective = BlockSymMatrix::new(c, vec![])?;
    let cons = (0..=n as usize)
        .map(|j| {
            let mut a = SparseBlockSym::new(0);
            for r in d as usize..=n as usize {
                a.add_orthant(r - d as usize, q[r][j]);
            }
            a.add_orthant(na + j, -1.0);
            Constraint { a, b: -1.0 / unit }
        })
        .collect();
    ConicProblem::with_offset(cone, objective, cons, 1.0)
}

pub fn delsarte_run(n: u32, d: u32, params: &BoundParams) -> Result<BoundRun> {
    let p = build_delsarte(n, d)?;
    run_program(&p, Side::Primal, n, d, Method::Delsarte, params)
}

/// Delsarte's linear programming bound on `A(n, d)`.
pub fn delsarte_lp(n: u32, d: u32, params: &BoundParams) -> Result<BoundResult> {
    delsarte_run(n, d, params)?.into_result()
}

/// Point of the LP in the `x_r` convention together with its checks.
#[derive(Clone, Debug, PartialEq)]
pub struct LpPoint {
    pub n: u32,
    pub d: u32,
    /// `x_r = A_r / (2ⁿ C(n,r))`
    pub x: Vec<f64>,
    /// `2ⁿ Σ_r C(n,r) x_r`
    pub objective: f64,
    /// largest violation of `x_0 = 2⁻ⁿ` and `x_r = 0` for `0 < r < d`
    pub equality_violation: f64,
    /// smallest `x_r`
    pub min_x: f64,
    /// smallest `2ⁿ Σ_r x_r K_r(j)`
    pub min_row: f64,
}

/// Evaluates `x` against the LP as written in the `x_r` unknowns.
pub fn check_lp_point(n: u32, d: u32, x: &[f64]) -> Result<LpPoint> {
    check_nd(n, d)?;
    if x.len() != n as usize + 1 {
        return Err(Error::ShapeMismatch(format!("expected {} entries, got {}", n + 1, x.len())));
    }
    let k = KrawtchoukTable::new(n);
    let scale = 2f64.powi(n as i32);
    let objective = scale * (0..=n).map(|r| binom(n as i64, r as i64).to_f64().unwrap() * x[r as usize]).sum::<f64>();
    let mut equality_violation = (x[0] * scale - 1.0).abs();
    for r in 1..d as usize {
        equality_violation = equality_violation.max((x[r] * scale).abs());
    }
    let min_x = x.iter().copied().fold(f64::INFINITY, f64::min);
    let min_row = (0..=n)
        .map(|j| scale * (0..=n).map(|r| k.get(r, j).to_f64().unwrap() * x[r as usize]).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    Ok(LpPoint { n, d, x: x.to_vec(), objective, equality_violation, min_x, min_row })
}

/// Feasible LP point of a code with minimum distance at least `d`; its
/// objective is `|c|`. Fails if the code is too close or the point violates
/// any constraint by more than `1e-12` (relative to the row scale).
pub fn code_to_lp_point(c: &Code, d: u32) -> Result<LpPoint> {
    let n = c.length();
    check_nd(n, d)?;
    if c.is_empty() || !c.has_min_distance(d) {
        return Err(Error::Verification(format!("code does not have minimum distance {d}")));
    }
    let counts = distance_counts(c);
    let size = c.len() as f64;
    let scale = 2f64.powi(n as i32);
    let x: Vec<f64> = (0..=n)
        .map(|r| counts[r as usize] as f64 / size / (scale * binom(n as i64, r as i64).to_f64().unwrap()))
        .collect();
    let pt = check_lp_point(n, d, &x)?;
    let tol = 1e-12 * size.max(1.0);
    if pt.equality_violation > tol || pt.min_x < -tol || pt.min_row < -tol || (pt.objective - size).abs() > 1e-9 * size {
        return Err(Error::Verification(format!("code point violates the LP: {pt:?}")));
    }
    Ok(pt)
}
