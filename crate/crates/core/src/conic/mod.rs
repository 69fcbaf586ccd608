// SPDX-License-Identifier: Apache-2.0

//! Conic programs over the product cone ℝ^k₊ ⊕ 𝒮^{s₁}₊ ⊕ … ⊕ 𝒮^{s_r}₊.
//!
//! A [`ConicProblem`] is always stated in primal standard form
//!
//! ```text
//!     maximize   ⟨C, X⟩ + offset
//!     subject to ⟨A_j, X⟩ = b_j   (j = 1..m)
//!                X ∈ K
//! ```
//!
//! with dual `minimize bᵀy + offset  s.t.  Σ y_j A_j − C ∈ K`.
//! Programs that are more naturally written as linear matrix inequalities in
//! free variables are turned into this form by [`LmiBuilder`], which places
//! the free variables on the dual side.

mod lmi;
mod symmetry;
pub mod text;

pub use lmi::{LmiBuilder, LmiCheck, LmiProgram};
pub use symmetry::{gamma_average, gamma_average_with_cap, group_closure, DEFAULT_GROUP_CAP};

use crate::error::{Error, Result};
use crate::linalg::{min_eigenvalue, Mat};
use std::fmt;

/// Absolute tolerance under which a (unit-scaled) matrix counts as PSD.
pub const PSD_TOL: f64 = 1e-8;

/// Shape of the product cone: an orthant part and a list of PSD blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeSpec {
    orthant_dim: usize,
    psd_block_sizes: Vec<usize>,
}

impl ConeSpec {
    pub fn new(orthant_dim: usize, psd_block_sizes: Vec<usize>) -> Result<Self> {
        if let Some(pos) = psd_block_sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidCone(format!("PSD block {pos} has size 0")));
        }
        Ok(ConeSpec { orthant_dim, psd_block_sizes })
    }

    pub fn orthant(dim: usize) -> Self {
        ConeSpec { orthant_dim: dim, psd_block_sizes: Vec::new() }
    }

    pub fn orthant_dim(&self) -> usize {
        self.orthant_dim
    }

    pub fn psd_block_sizes(&self) -> &[usize] {
        &self.psd_block_sizes
    }

    pub fn num_blocks(&self) -> usize {
        self.psd_block_sizes.len()
    }

    /// Dimension of the cone as a real vector space.
    pub fn total_dim(&self) -> usize {
        self.orthant_dim + self.psd_block_sizes.iter().map(|s| s * (s + 1) / 2).sum::<usize>()
    }

    /// Barrier parameter ν = orthant_dim + Σ sᵢ.
    pub fn barrier_degree(&self) -> usize {
        self.orthant_dim + self.psd_block_sizes.iter().sum::<usize>()
    }
}

/// Element of the space housing a [`ConeSpec`]: an orthant vector and dense
/// symmetric blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockSymMatrix {
    orthant: Vec<f64>,
    blocks: Vec<Mat>,
}

impl BlockSymMatrix {
    /// Builds after checking every block for symmetry; the stored blocks are
    /// exactly symmetric (averaged) afterwards.
    pub fn new(orthant: Vec<f64>, blocks: Vec<Mat>) -> Result<Self> {
        let mut blocks = blocks;
        for b in &mut blocks {
            let scale = 1.0 + b.max_abs();
            let n = b.dim();
            let mut worst = 0.0f64;
            for i in 0..n {
                for j in i + 1..n {
                    worst = worst.max((b[(i, j)] - b[(j, i)]).abs());
                }
            }
            if worst > 1e-12 * scale {
                return Err(Error::NotSymmetric(worst));
            }
            b.symmetrize();
        }
        Ok(BlockSymMatrix { orthant, blocks })
    }

    pub fn zeros(cone: &ConeSpec) -> Self {
        BlockSymMatrix {
            orthant: vec![0.0; cone.orthant_dim],
            blocks: cone.psd_block_sizes.iter().map(|&s| Mat::zeros(s)).collect(),
        }
    }

    pub fn identity(cone: &ConeSpec) -> Self {
        BlockSymMatrix {
            orthant: vec![1.0; cone.orthant_dim],
            blocks: cone.psd_block_sizes.iter().map(|&s| Mat::identity(s)).collect(),
        }
    }

    pub fn orthant(&self) -> &[f64] {
        &self.orthant
    }

    pub fn orthant_mut(&mut self) -> &mut [f64] {
        &mut self.orthant
    }

    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &Mat {
        &self.blocks[k]
    }

    /// Mutable block access; callers must keep the block symmetric.
    pub fn block_mut(&mut self, k: usize) -> &mut Mat {
        &mut self.blocks[k]
    }

    pub fn cone(&self) -> ConeSpec {
        ConeSpec {
            orthant_dim: self.orthant.len(),
            psd_block_sizes: self.blocks.iter().map(Mat::dim).collect(),
        }
    }

    pub fn conforms_to(&self, cone: &ConeSpec) -> bool {
        self.orthant.len() == cone.orthant_dim
            && self.blocks.len() == cone.psd_block_sizes.len()
            && self.blocks.iter().zip(&cone.psd_block_sizes).all(|(b, &s)| b.dim() == s)
    }

    pub fn scale(&mut self, s: f64) {
        self.orthant.iter_mut().for_each(|v| *v *= s);
        self.blocks.iter_mut().for_each(|b| b.scale(s));
    }

    /// self += s · other (shapes must agree).
    pub fn axpy(&mut self, s: f64, other: &BlockSymMatrix) {
        for (a, b) in self.orthant.iter_mut().zip(&other.orthant) {
            *a += s * b;
        }
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            a.axpy(s, b);
        }
    }

    pub fn max_abs(&self) -> f64 {
        let o = self.orthant.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        self.blocks.iter().fold(o, |m, b| m.max(b.max_abs()))
    }

    /// Smallest "eigenvalue" over the cone: min of orthant entries and block
    /// eigenvalues.
    pub fn min_cone_eig(&self) -> f64 {
        let o = self.orthant.iter().copied().fold(f64::INFINITY, f64::min);
        self.blocks.iter().map(min_eigenvalue).fold(o, f64::min)
    }
}

/// Sparse symmetric element of the cone space; each block entry `(i, j, v)`
/// with `i ≤ j` stands for `v` at both `(i, j)` and `(j, i)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseBlockSym {
    pub orthant: Vec<(usize, f64)>,
    pub blocks: Vec<Vec<(usize, usize, f64)>>,
}

impl SparseBlockSym {
    pub fn new(num_blocks: usize) -> Self {
        SparseBlockSym { orthant: Vec::new(), blocks: vec![Vec::new(); num_blocks] }
    }

    pub fn add_orthant(&mut self, r: usize, v: f64) {
        if v != 0.0 {
            self.orthant.push((r, v));
        }
    }

    /// Adds `v` to the symmetric pair of entries (i, j)/(j, i).
    pub fn add_block(&mut self, k: usize, i: usize, j: usize, v: f64) {
        if v != 0.0 {
            let (i, j) = if i <= j { (i, j) } else { (j, i) };
            self.blocks[k].push((i, j, v));
        }
    }

    /// Merges duplicate coordinates and drops explicit zeros; entries end
    /// up sorted, which fixes the summation order used everywhere else.
    pub fn canonicalize(&mut self) {
        self.orthant.sort_by_key(|e| e.0);
        self.orthant = merge_sorted(&self.orthant, |e| e.0, |a, b| (a.0, a.1 + b.1), |e| e.1);
        for blk in &mut self.blocks {
            blk.sort_by_key(|e| (e.0, e.1));
            *blk = merge_sorted(blk, |e| (e.0, e.1), |a, b| (a.0, a.1, a.2 + b.2), |e| e.2);
        }
    }

    pub fn nnz(&self) -> usize {
        self.orthant.len() + self.blocks.iter().map(Vec::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.nnz() == 0
    }

    /// ⟨self, X⟩ with the trace inner product.
    pub fn dot_dense(&self, x: &BlockSymMatrix) -> f64 {
        let mut s = 0.0;
        for &(r, v) in &self.orthant {
            s += v * x.orthant[r];
        }
        for (blk, xb) in self.blocks.iter().zip(&x.blocks) {
            for &(i, j, v) in blk {
                if i == j {
                    s += v * xb[(i, i)];
                } else {
                    s += 2.0 * v * xb[(i, j)];
                }
            }
        }
        s
    }

    /// ⟨self, other⟩ for two sparse elements (both canonical).
    pub fn dot_sparse(&self, other: &SparseBlockSym) -> f64 {
        let mut s = sorted_dot(&self.orthant, &other.orthant, |e| e.0, |e| e.1);
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            let mult = |e: &(usize, usize, f64)| if e.0 == e.1 { e.2 } else { 2.0 * e.2 };
            let mut i = 0;
            let mut j = 0;
            while i < a.len() && j < b.len() {
                let ka = (a[i].0, a[i].1);
                let kb = (b[j].0, b[j].1);
                match ka.cmp(&kb) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        s += mult(&a[i]) * b[j].2;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        s
    }

    /// out += s · self
    pub fn add_to_dense(&self, s: f64, out: &mut BlockSymMatrix) {
        for &(r, v) in &self.orthant {
            out.orthant[r] += s * v;
        }
        for (blk, ob) in self.blocks.iter().zip(&mut out.blocks) {
            for &(i, j, v) in blk {
                ob[(i, j)] += s * v;
                if i != j {
                    ob[(j, i)] += s * v;
                }
            }
        }
    }

    pub fn to_dense(&self, cone: &ConeSpec) -> BlockSymMatrix {
        let mut out = BlockSymMatrix::zeros(cone);
        self.add_to_dense(1.0, &mut out);
        out
    }

    /// Sparse view of a dense element (upper triangle, exact zeros skipped).
    pub fn from_dense(x: &BlockSymMatrix) -> Self {
        let mut out = SparseBlockSym::new(x.blocks.len());
        for (r, &v) in x.orthant.iter().enumerate() {
            out.add_orthant(r, v);
        }
        for (k, b) in x.blocks.iter().enumerate() {
            for i in 0..b.dim() {
                for j in i..b.dim() {
                    out.add_block(k, i, j, b[(i, j)]);
                }
            }
        }
        out
    }

    pub fn conforms_to(&self, cone: &ConeSpec) -> bool {
        self.blocks.len() == cone.num_blocks()
            && self.orthant.iter().all(|&(r, _)| r < cone.orthant_dim())
            && self
                .blocks
                .iter()
                .zip(cone.psd_block_sizes())
                .all(|(blk, &s)| blk.iter().all(|&(i, j, _)| i <= j && j < s))
    }
}

fn merge_sorted<T: Copy, K: PartialEq>(
    items: &[T],
    key: impl Fn(&T) -> K,
    combine: impl Fn(T, T) -> T,
    value: impl Fn(&T) -> f64,
) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(items.len());
    for &it in items {
        match out.last_mut() {
            Some(last) if key(last) == key(&it) => *last = combine(*last, it),
            _ => out.push(it),
        }
    }
    out.retain(|e| value(e) != 0.0);
    out
}

fn sorted_dot<T, K: Ord>(a: &[T], b: &[T], key: impl Fn(&T) -> K, val: impl Fn(&T) -> f64) -> f64 {
    let (mut i, mut j, mut s) = (0, 0, 0.0);
    while i < a.len() && j < b.len() {
        match key(&a[i]).cmp(&key(&b[j])) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += val(&a[i]) * val(&b[j]);
                i += 1;
                j += 1;
            }
        }
    }
    s
}

/// One linear equality ⟨A, X⟩ = b.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub a: SparseBlockSym,
    pub b: f64,
}

/// Primal standard-form conic program (maximization).
#[derive(Clone, Debug, PartialEq)]
pub struct ConicProblem {
    cone: ConeSpec,
    objective: BlockSymMatrix,
    constraints: Vec<Constraint>,
    offset: f64,
}

impl ConicProblem {
    pub fn new(cone: ConeSpec, objective: BlockSymMatrix, constraints: Vec<Constraint>) -> Result<Self> {
        Self::with_offset(cone, objective, constraints, 0.0)
    }

    pub fn with_offset(
        cone: ConeSpec,
        objective: BlockSymMatrix,
        mut constraints: Vec<Constraint>,
        offset: f64,
    ) -> Result<Self> {
        if constraints.is_empty() {
            return Err(Error::InvalidProblem("constraint list is empty".into()));
        }
        if !objective.conforms_to(&cone) {
            return Err(Error::ShapeMismatch("objective does not conform to cone".into()));
        }
        for (j, c) in constraints.iter_mut().enumerate() {
            if !c.a.conforms_to(&cone) {
                return Err(Error::ShapeMismatch(format!("constraint {j} does not conform to cone")));
            }
            if !c.b.is_finite() {
                return Err(Error::InvalidProblem(format!("constraint {j} has non-finite rhs")));
            }
            c.a.canonicalize();
        }
        Ok(ConicProblem { cone, objective, constraints, offset })
    }

    pub fn cone(&self) -> &ConeSpec {
        &self.cone
    }

    pub fn objective(&self) -> &BlockSymMatrix {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Constant added to ⟨C, X⟩ (and to bᵀy) when reporting values.
    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn rhs(&self) -> Vec<f64> {
        self.constraints.iter().map(|c| c.b).collect()
    }

    /// A(X) = (⟨A_j, X⟩)_j
    pub fn apply(&self, x: &BlockSymMatrix) -> Vec<f64> {
        self.constraints.iter().map(|c| c.a.dot_dense(x)).collect()
    }

    /// Σ y_j A_j
    pub fn adjoint(&self, y: &[f64]) -> BlockSymMatrix {
        let mut out = BlockSymMatrix::zeros(&self.cone);
        for (c, &yj) in self.constraints.iter().zip(y) {
            if yj != 0.0 {
                c.a.add_to_dense(yj, &mut out);
            }
        }
        out
    }

    /// Dual slack Σ y_j A_j − C.
    pub fn dual_slack(&self, y: &[f64]) -> BlockSymMatrix {
        let mut s = self.adjoint(y);
        s.axpy(-1.0, &self.objective);
        s
    }

    pub fn primal_objective(&self, x: &BlockSymMatrix) -> f64 {
        trace_inner_unchecked(&self.objective, x) + self.offset
    }

    pub fn dual_objective(&self, y: &[f64]) -> f64 {
        self.constraints.iter().zip(y).map(|(c, yj)| c.b * yj).sum::<f64>() + self.offset
    }

    /// Dense copy of constraint matrix `A_j`.
    pub fn constraint_dense(&self, j: usize) -> BlockSymMatrix {
        self.constraints[j].a.to_dense(&self.cone)
    }

    /// Same program with the objective multiplied by `lambda`.
    pub fn scaled_objective(&self, lambda: f64) -> ConicProblem {
        let mut p = self.clone();
        p.objective.scale(lambda);
        p.offset *= lambda;
        p
    }

    /// Appends a constraint (used by tests to build redundant systems).
    pub fn push_constraint(&mut self, mut c: Constraint) -> Result<()> {
        if !c.a.conforms_to(&self.cone) {
            return Err(Error::ShapeMismatch("constraint does not conform to cone".into()));
        }
        c.a.canonicalize();
        self.constraints.push(c);
        Ok(())
    }
}

/// Termination status of a solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SolveStatus {
    Optimal,
    MaxIter,
    NumericalFailure,
    PrimalInfeasibleLikely,
    DualInfeasibleLikely,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SolveStatus::Optimal => "Optimal",
            SolveStatus::MaxIter => "MaxIter",
            SolveStatus::NumericalFailure => "NumericalFailure",
            SolveStatus::PrimalInfeasibleLikely => "PrimalInfeasibleLikely",
            SolveStatus::DualInfeasibleLikely => "DualInfeasibleLikely",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for SolveStatus {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "Optimal" => SolveStatus::Optimal,
            "MaxIter" => SolveStatus::MaxIter,
            "NumericalFailure" => SolveStatus::NumericalFailure,
            "PrimalInfeasibleLikely" => SolveStatus::PrimalInfeasibleLikely,
            "DualInfeasibleLikely" => SolveStatus::DualInfeasibleLikely,
            other => return Err(Error::Parse { line: 0, msg: format!("unknown status {other:?}") }),
        })
    }
}

/// Primal-dual pair returned by the solver.
#[derive(Clone, Debug)]
pub struct Solution {
    pub x: BlockSymMatrix,
    pub y: Vec<f64>,
    pub status: SolveStatus,
    pub primal_value: f64,
    pub dual_value: f64,
    /// dual_value − primal_value
    pub gap: f64,
}

/// ⟨X, Y⟩ = Σ orthant products + Σ_blocks Σ_ij X_ij Y_ij.
pub fn trace_inner(x: &BlockSymMatrix, y: &BlockSymMatrix) -> Result<f64> {
    if x.cone() != y.cone() {
        return Err(Error::ShapeMismatch("trace_inner operands have different cones".into()));
    }
    Ok(trace_inner_unchecked(x, y))
}

fn trace_inner_unchecked(x: &BlockSymMatrix, y: &BlockSymMatrix) -> f64 {
    let mut s: f64 = x.orthant.iter().zip(&y.orthant).map(|(a, b)| a * b).sum();
    for (a, b) in x.blocks.iter().zip(&y.blocks) {
        s += a.dot(b);
    }
    s
}

/// Structured description of the dual program
/// `minimize bᵀy + offset  s.t.  Σ y_j A_j − C ∈ K`.
#[derive(Clone, Debug)]
pub struct DualProgram<'a> {
    problem: &'a ConicProblem,
}

impl<'a> DualProgram<'a> {
    pub fn num_vars(&self) -> usize {
        self.problem.num_constraints()
    }

    pub fn objective(&self) -> Vec<f64> {
        self.problem.rhs()
    }

    pub fn value(&self, y: &[f64]) -> f64 {
        self.problem.dual_objective(y)
    }

    /// Slack map y ↦ Σ y_j A_j − C.
    pub fn slack(&self, y: &[f64]) -> Result<BlockSymMatrix> {
        if y.len() != self.num_vars() {
            return Err(Error::ShapeMismatch(format!(
                "dual vector has length {}, expected {}",
                y.len(),
                self.num_vars()
            )));
        }
        Ok(self.problem.dual_slack(y))
    }

    pub fn is_feasible(&self, y: &[f64], tol: f64) -> Result<bool> {
        Ok(self.slack(y)?.min_cone_eig() >= -tol)
    }
}

impl fmt::Display for DualProgram<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cone = self.problem.cone();
        writeln!(f, "minimize  b^T y{}", offset_suffix(self.problem.offset))?;
        writeln!(f, "  y in R^{}", self.num_vars())?;
        writeln!(f, "  b = {:?}", self.objective())?;
        write!(f, "subject to  sum_j y_j A_j - C in orthant({})", cone.orthant_dim())?;
        for s in cone.psd_block_sizes() {
            write!(f, " + psd({s})")?;
        }
        writeln!(f)
    }
}

fn offset_suffix(offset: f64) -> String {
    if offset == 0.0 {
        String::new()
    } else {
        format!(" + {offset}")
    }
}

/// The dual of `p`: one free variable per primal constraint.
pub fn dualize(p: &ConicProblem) -> DualProgram<'_> {
    DualProgram { problem: p }
}

/// Optimality audit of a primal-dual pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualityReport {
    /// dual objective − primal objective
    pub gap: f64,
    /// smallest cone eigenvalue of Σ y_j A_j − C
    pub slack_min_eig: f64,
    /// ⟨X, Σ y_j A_j − C⟩
    pub compl_slackness: f64,
    /// ‖A(X) − b‖∞
    pub primal_residual: f64,
    /// smallest cone eigenvalue of X
    pub primal_min_eig: f64,
}

pub fn duality_report(p: &ConicProblem, s: &Solution) -> Result<DualityReport> {
    if !s.x.conforms_to(p.cone()) || s.y.len() != p.num_constraints() {
        return Err(Error::ShapeMismatch("solution does not conform to problem".into()));
    }
    let slack = p.dual_slack(&s.y);
    let ax = p.apply(&s.x);
    let primal_residual = ax.iter().zip(p.constraints()).fold(0.0f64, |m, (a, c)| m.max((a - c.b).abs()));
    Ok(DualityReport {
        gap: p.dual_objective(&s.y) - p.primal_objective(&s.x),
        slack_min_eig: slack.min_cone_eig(),
        compl_slackness: trace_inner_unchecked(&s.x, &slack),
        primal_residual,
        primal_min_eig: s.x.min_cone_eig(),
    })
}

/// Smallest eigenvalue of a square symmetric matrix.
pub fn psd_min_eig(m: &Mat) -> Result<f64> {
    let scale = 1.0 + m.max_abs();
    let n = m.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    if worst > 1e-10 * scale {
        return Err(Error::NotSymmetric(worst));
    }
    Ok(min_eigenvalue(m))
}

/// Same as [`psd_min_eig`] for row-major nested vectors, rejecting ragged or
/// non-square input.
pub fn psd_min_eig_rows(rows: &[Vec<f64>]) -> Result<f64> {
    let m = Mat::from_rows(rows).ok_or(Error::NotSquare)?;
    psd_min_eig(&m)
}

/// PSD test at the default tolerance.
pub fn is_psd(m: &Mat) -> Result<bool> {
    Ok(psd_min_eig(m)? >= -PSD_TOL)
}

/// Complex Hermitian matrix stored as real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    re: Mat,
    im: Mat,
}

impl HermitianMatrix {
    pub fn new(re: Mat, im: Mat) -> Result<Self> {
        if re.dim() != im.dim() {
            return Err(Error::NotHermitian("real and imaginary parts differ in size".into()));
        }
        let n = re.dim();
        let tol = 1e-12 * (1.0 + re.max_abs() + im.max_abs());
        for i in 0..n {
            if im[(i, i)].abs() > tol {
                return Err(Error::NotHermitian(format!("imaginary diagonal entry at {i}")));
            }
            for j in i + 1..n {
                if (re[(i, j)] - re[(j, i)]).abs() > tol {
                    return Err(Error::NotHermitian(format!("real part asymmetric at ({i},{j})")));
                }
                if (im[(i, j)] + im[(j, i)]).abs() > tol {
                    return Err(Error::NotHermitian(format!("imaginary part not antisymmetric at ({i},{j})")));
                }
            }
        }
        Ok(HermitianMatrix { re, im })
    }

    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    pub fn re(&self) -> &Mat {
        &self.re
    }

    pub fn im(&self) -> &Mat {
        &self.im
    }
}

/// Real symmetric embedding `[[Re, −Im], [Im, Re]]`; PSD iff `h` is PSD.
pub fn realify_hermitian(h: &HermitianMatrix) -> Mat {
    let n = h.dim();
    let mut out = Mat::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            let re = h.re[(i, j)];
            let im = h.im[(i, j)];
            out[(i, j)] = re;
            out[(n + i, n + j)] = re;
            out[(i, n + j)] = -im;
            out[(n + i, j)] = im;
        }
    }
    out
}

#[cfg(test)]
mod tests;
