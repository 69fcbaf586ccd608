// SPDX-License-Identifier: Apache-2.0

//! Infeasible primal-dual path following with Nesterov–Todd scaling and a
//! Mehrotra predictor-corrector step.
//!
//! Notation: primal `X`, dual `(y, S)` with `S = A*(y) − C` at feasibility.
//! For every PSD block the NT scaling point `W` satisfies `W S W = X`; it is
//! built from `X = L Lᵀ` and `Lᵀ S L = Q Λ Qᵀ` as `W = L Q Λ^{-1/2} Qᵀ Lᵀ`.
//! With `G = L Q Λ^{-1/4}` both `G⁻¹ X G⁻ᵀ` and `Gᵀ S G` equal
//! `V = Λ^{1/2}`, so the linearized complementarity equation is a diagonal
//! Lyapunov equation in the scaled space. Orthant coordinates use the
//! scalar specialization `w = x / s`.

use super::presolve::Presolved;
use super::{IterateLog, IterateRecord, SolverParams};
use crate::conic::{BlockSymMatrix, ConicProblem, Constraint, SolveStatus};
use crate::linalg::{cholesky, jacobi_eigen, lower_inverse, min_eigenvalue, Mat, PivotedCholesky};

pub(super) struct InnerResult {
    pub x: BlockSymMatrix,
    pub y: Vec<f64>,
    pub status: SolveStatus,
}

/// Program without constraints: `max ⟨C, X⟩` over the cone is 0 at `X = 0`
/// when `−C ∈ K`, and unbounded otherwise.
pub(super) fn trivial(r: &Presolved) -> InnerResult {
    let mut neg = r.objective.clone();
    neg.scale(-1.0);
    let status = if neg.min_cone_eig() >= -1e-12 { SolveStatus::Optimal } else { SolveStatus::DualInfeasibleLikely };
    InnerResult { x: BlockSymMatrix::zeros(&r.cone), y: Vec::new(), status }
}

const SCHUR_PIVOT_TOL: f64 = 1e-15;
const DIVERGENCE: f64 = 1e12;
const STALL_STEP: f64 = 1e-9;
const STALL_LIMIT: usize = 5;

struct BlockScaling {
    w: Mat,
    g: Mat,
    g_inv: Mat,
    v: Vec<f64>,
    x_chol_inv: Mat,
    s_chol_inv: Mat,
}

fn block_scaling(x: &Mat, s: &Mat) -> Option<BlockScaling> {
    let l = cholesky(x)?;
    let ls = cholesky(s)?;
    let mut r = l.transpose().matmul(s).matmul(&l);
    r.symmetrize();
    let eig = jacobi_eigen(&r, true);
    if eig.values.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
        return None;
    }
    let n = x.dim();
    let q = &eig.vectors;
    let lq = l.matmul(q);
    let mut g = lq.clone();
    let mut lq_half = lq.clone();
    for j in 0..n {
        let quarter = eig.values[j].powf(-0.25);
        let half = eig.values[j].powf(-0.5);
        for i in 0..n {
            g[(i, j)] *= quarter;
            lq_half[(i, j)] *= half;
        }
    }
    // W = (L Q Λ^{-1/2}) (L Q)ᵀ
    let mut w = lq_half.matmul_t(&lq);
    w.symmetrize();
    let l_inv = lower_inverse(&l);
    // G⁻¹ = Λ^{1/4} Qᵀ L⁻¹
    let mut g_inv = q.transpose().matmul(&l_inv);
    for i in 0..n {
        let quarter = eig.values[i].powf(0.25);
        for j in 0..n {
            g_inv[(i, j)] *= quarter;
        }
    }
    let v = eig.values.iter().map(|l| l.sqrt()).collect();
    Some(BlockScaling { w, g, g_inv, v, x_chol_inv: l_inv, s_chol_inv: lower_inverse(&ls) })
}

/// Per-block list of constraints with entries in that block, and per-orthant
/// coordinate list of (constraint, coefficient).
struct Sparsity {
    block_lists: Vec<Vec<usize>>,
    orthant_lists: Vec<Vec<(usize, f64)>>,
}

impl Sparsity {
    fn new(p: &ConicProblem) -> Self {
        let nb = p.cone().num_blocks();
        let mut block_lists = vec![Vec::new(); nb];
        let mut orthant_lists = vec![Vec::new(); p.cone().orthant_dim()];
        for (j, c) in p.constraints().iter().enumerate() {
            for (k, blk) in c.a.blocks.iter().enumerate() {
                if !blk.is_empty() {
                    block_lists[k].push(j);
                }
            }
            for &(r, a) in &c.a.orthant {
                orthant_lists[r].push((j, a));
            }
        }
        Sparsity { block_lists, orthant_lists }
    }
}

/// W A W for a sparse symmetric `A` (upper-triangle entries).
fn congruence_sparse(w: &Mat, entries: &[(usize, usize, f64)]) -> Mat {
    let n = w.dim();
    if entries.len() > n {
        let mut a = Mat::zeros(n);
        for &(i, j, v) in entries {
            a[(i, j)] += v;
            if i != j {
                a[(j, i)] += v;
            }
        }
        let mut g = w.matmul(&a).matmul(w);
        g.symmetrize();
        return g;
    }
    let mut g = Mat::zeros(n);
    for &(c, d, v) in entries {
        let wc = w.row(c).to_vec();
        let wd = w.row(d).to_vec();
        for a in 0..n {
            let row = &mut g.as_mut_slice()[a * n..(a + 1) * n];
            let (ca, da) = (v * wc[a], v * wd[a]);
            if c == d {
                for (o, x) in row.iter_mut().zip(&wc) {
                    *o += ca * x;
                }
            } else {
                for ((o, x), z) in row.iter_mut().zip(&wd).zip(&wc) {
                    *o += ca * x + da * z;
                }
            }
        }
    }
    g
}

fn block_entries_dot(entries: &[(usize, usize, f64)], g: &Mat) -> f64 {
    entries.iter().map(|&(i, j, v)| if i == j { v * g[(i, i)] } else { 2.0 * v * g[(i, j)] }).sum()
}

fn schur_complement(
    cons: &[Constraint],
    sp: &Sparsity,
    scal: &[BlockScaling],
    w_orth: &[f64],
) -> Mat {
    let m = cons.len();
    let mut mat = Mat::zeros(m);
    for (r, list) in sp.orthant_lists.iter().enumerate() {
        let w = w_orth[r];
        for &(j1, a1) in list {
            for &(j2, a2) in list {
                mat[(j1, j2)] += a1 * a2 * w;
            }
        }
    }
    for (k, list) in sp.block_lists.iter().enumerate() {
        let w = &scal[k].w;
        for (pos, &j) in list.iter().enumerate() {
            let g = congruence_sparse(w, &cons[j].a.blocks[k]);
            for &i in &list[..=pos] {
                let v = block_entries_dot(&cons[i].a.blocks[k], &g);
                mat[(i, j)] += v;
                if i != j {
                    mat[(j, i)] += v;
                }
            }
        }
    }
    mat
}

/// W Z W blockwise (orthant: w ⊙ z).
fn scale_by_w(z: &BlockSymMatrix, scal: &[BlockScaling], w_orth: &[f64]) -> BlockSymMatrix {
    let mut out = z.clone();
    for (o, w) in out.orthant_mut().iter_mut().zip(w_orth) {
        *o *= w;
    }
    for (k, sc) in scal.iter().enumerate() {
        let mut b = sc.w.matmul(z.block(k)).matmul(&sc.w);
        b.symmetrize();
        *out.block_mut(k) = b;
    }
    out
}

/// Largest α ≤ ∞ with `X + α ΔX` in the cone, given `L⁻¹` for each block.
fn max_step(x: &BlockSymMatrix, dx: &BlockSymMatrix, chol_inv: impl Fn(usize) -> Mat) -> f64 {
    let mut alpha = f64::INFINITY;
    for (xi, di) in x.orthant().iter().zip(dx.orthant()) {
        if *di < 0.0 {
            alpha = alpha.min(-xi / di);
        }
    }
    for k in 0..dx.blocks().len() {
        let li = chol_inv(k);
        let mut b = li.matmul(dx.block(k)).matmul_t(&li);
        b.symmetrize();
        let lam = min_eigenvalue(&b);
        if lam < 0.0 {
            alpha = alpha.min(-1.0 / lam);
        }
    }
    alpha
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

pub(super) fn run(p: &ConicProblem, params: &SolverParams, log: &mut IterateLog) -> InnerResult {
    let m = p.num_constraints();
    let cone = p.cone().clone();
    let nu = cone.barrier_degree().max(1) as f64;

    // Internal unit scaling of b and C.
    let b_norm = inf_norm(&p.rhs());
    let c_norm = p.objective().max_abs();
    let b_scale = b_norm.max(1.0);
    let c_scale = c_norm.max(1.0);
    let b: Vec<f64> = p.rhs().iter().map(|v| v / b_scale).collect();
    let mut c = p.objective().clone();
    c.scale(1.0 / c_scale);
    let cons = p.constraints();
    let sp = Sparsity::new(p);

    let apply = |x: &BlockSymMatrix| -> Vec<f64> { cons.iter().map(|k| k.a.dot_dense(x)).collect() };
    let adjoint = |y: &[f64]| -> BlockSymMatrix {
        let mut out = BlockSymMatrix::zeros(&cone);
        for (k, &yj) in cons.iter().zip(y) {
            if yj != 0.0 {
                k.a.add_to_dense(yj, &mut out);
            }
        }
        out
    };
    let inner = |a: &BlockSymMatrix, bm: &BlockSymMatrix| -> f64 {
        let mut s: f64 = a.orthant().iter().zip(bm.orthant()).map(|(x, y)| x * y).sum();
        for (x, y) in a.blocks().iter().zip(bm.blocks()) {
            s += x.dot(y);
        }
        s
    };

    let mut x = BlockSymMatrix::identity(&cone);
    x.scale(params.initial_scale);
    let mut s = BlockSymMatrix::identity(&cone);
    s.scale(params.initial_scale);
    let mut y = vec![0.0; m];

    let unscale = |x: &BlockSymMatrix, y: &[f64], status| {
        let mut xu = x.clone();
        xu.scale(b_scale);
        InnerResult { x: xu, y: y.iter().map(|v| v * c_scale).collect(), status }
    };
    let f = b_scale * c_scale;
    let mut stalled = 0;

    for iter in 0..params.max_iter {
        let ax = apply(&x);
        let rp: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        let mut rd = adjoint(&y);
        rd.axpy(-1.0, &s);
        rd.axpy(-1.0, &c);
        let pobj = inner(&c, &x);
        let dobj: f64 = b.iter().zip(&y).map(|(a, b)| a * b).sum();
        let xs = inner(&x, &s);
        let mu = xs / nu;

        let pobj_u = f * pobj + p.offset();
        let dobj_u = f * dobj + p.offset();
        let pinf = b_scale * inf_norm(&rp) / (1.0 + b_norm);
        let dinf = c_scale * rd.max_abs() / (1.0 + c_norm);
        let scale_gap = 1.0 + pobj_u.abs();
        let converged = pinf <= params.feas_tol
            && dinf <= params.feas_tol
            && (dobj_u - pobj_u).abs() <= params.gap_tol * scale_gap
            && f * xs <= params.gap_tol * scale_gap;

        let mut record = IterateRecord {
            iteration: iter,
            mu: f * mu,
            primal_residual: pinf,
            dual_residual: dinf,
            primal_objective: pobj_u,
            dual_objective: dobj_u,
            step_primal: 0.0,
            step_dual: 0.0,
        };
        if converged {
            log.records.push(record);
            return unscale(&x, &y, SolveStatus::Optimal);
        }
        if !(pobj.is_finite() && dobj.is_finite() && mu.is_finite()) {
            log.records.push(record);
            return unscale(&x, &y, SolveStatus::NumericalFailure);
        }
        // A large iterate alone only signals a missing interior; infeasibility
        // also needs the objective to run off.
        if x.max_abs() > DIVERGENCE && pobj > DIVERGENCE.sqrt() && dinf <= params.feas_tol.sqrt() {
            log.records.push(record);
            return unscale(&x, &y, SolveStatus::DualInfeasibleLikely);
        }
        if inf_norm(&y) > DIVERGENCE && dobj < -DIVERGENCE.sqrt() && pinf <= params.feas_tol.sqrt() {
            log.records.push(record);
            return unscale(&x, &y, SolveStatus::PrimalInfeasibleLikely);
        }

        // Scaling.
        let mut scal = Vec::with_capacity(cone.num_blocks());
        for k in 0..cone.num_blocks() {
            match block_scaling(x.block(k), s.block(k)) {
                Some(sc) => scal.push(sc),
                None => {
                    log.records.push(record);
                    return unscale(&x, &y, SolveStatus::NumericalFailure);
                }
            }
        }
        let w_orth: Vec<f64> = x.orthant().iter().zip(s.orthant()).map(|(a, b)| a / b).collect();

        let schur = schur_complement(cons, &sp, &scal, &w_orth);
        let chol = PivotedCholesky::factor(&schur, SCHUR_PIVOT_TOL);
        if chol.rank == 0 {
            log.records.push(record);
            return unscale(&x, &y, SolveStatus::NumericalFailure);
        }

        let wrdw = scale_by_w(&rd, &scal, &w_orth);
        let a_wrdw = apply(&wrdw);

        let direction = |rhat: &BlockSymMatrix| -> (BlockSymMatrix, Vec<f64>, BlockSymMatrix) {
            let a_r = apply(rhat);
            let rhs: Vec<f64> = (0..m).map(|j| a_r[j] - a_wrdw[j] - rp[j]).collect();
            let dy = chol.solve(&rhs);
            let mut ds = adjoint(&dy);
            ds.axpy(1.0, &rd);
            let mut dx = rhat.clone();
            dx.axpy(-1.0, &scale_by_w(&ds, &scal, &w_orth));
            (dx, dy, ds)
        };

        // Predictor.
        let mut rhat = x.clone();
        rhat.scale(-1.0);
        let (dx_a, _dy_a, ds_a) = direction(&rhat);
        let ap = max_step(&x, &dx_a, |k| scal[k].x_chol_inv.clone()).min(1.0);
        let ad = max_step(&s, &ds_a, |k| scal[k].s_chol_inv.clone()).min(1.0);
        let mut x_aff = x.clone();
        x_aff.axpy(ap, &dx_a);
        let mut s_aff = s.clone();
        s_aff.axpy(ad, &ds_a);
        let mu_aff = inner(&x_aff, &s_aff) / nu;
        let expon = (3.0 * ap.min(ad).powi(2)).max(1.0);
        let sigma = (mu_aff / mu).max(0.0).powf(expon).min(1.0);

        // Corrector right-hand side.
        let target = sigma * mu;
        let mut rhat = BlockSymMatrix::zeros(&cone);
        for r in 0..cone.orthant_dim() {
            let (xr, sr) = (x.orthant()[r], s.orthant()[r]);
            rhat.orthant_mut()[r] = (target - xr * sr - dx_a.orthant()[r] * ds_a.orthant()[r]) / sr;
        }
        for (k, sc) in scal.iter().enumerate() {
            let n = sc.v.len();
            let dxt = sc.g_inv.matmul(dx_a.block(k)).matmul_t(&sc.g_inv);
            let dzt = sc.g.transpose().matmul(ds_a.block(k)).matmul(&sc.g);
            let prod = dxt.matmul(&dzt);
            let mut t = Mat::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    let mut r = -(prod[(i, j)] + prod[(j, i)]);
                    if i == j {
                        r += 2.0 * target - 2.0 * sc.v[i] * sc.v[i];
                    }
                    t[(i, j)] = r / (sc.v[i] + sc.v[j]);
                }
            }
            let mut blk = sc.g.matmul(&t).matmul_t(&sc.g);
            blk.symmetrize();
            *rhat.block_mut(k) = blk;
        }
        let (dx, dy, ds) = direction(&rhat);
        let gamma = params.step_fraction;
        let ap = (gamma * max_step(&x, &dx, |k| scal[k].x_chol_inv.clone())).min(1.0);
        let ad = (gamma * max_step(&s, &ds, |k| scal[k].s_chol_inv.clone())).min(1.0);

        record.step_primal = ap;
        record.step_dual = ad;
        log.records.push(record);

        x.axpy(ap, &dx);
        s.axpy(ad, &ds);
        for (yi, di) in y.iter_mut().zip(&dy) {
            *yi += ad * di;
        }
        for k in 0..cone.num_blocks() {
            x.block_mut(k).symmetrize();
            s.block_mut(k).symmetrize();
        }

        if ap < STALL_STEP && ad < STALL_STEP {
            stalled += 1;
            if stalled >= STALL_LIMIT {
                return unscale(&x, &y, SolveStatus::NumericalFailure);
            }
        } else {
            stalled = 0;
        }
    }
    unscale(&x, &y, SolveStatus::MaxIter)
}
