// SPDX-License-Identifier: Apache-2.0

use super::{BlockSymMatrix, ConeSpec, ConicProblem, Constraint, SparseBlockSym};
use crate::error::{Error, Result};
use crate::linalg::{min_eigenvalue, Mat};

/// Affine scalar `constant + Σ coef·x_var`.
#[derive(Clone, Debug, Default)]
struct AffineRow {
    constant: f64,
    terms: Vec<(usize, f64)>,
}

/// Affine symmetric matrix `F₀ + Σ x_var F_var`, upper-triangle entries.
#[derive(Clone, Debug)]
struct AffineBlock {
    size: usize,
    constant: Vec<(usize, usize, f64)>,
    terms: Vec<(usize, usize, usize, f64)>, // (var, i, j, coef), i ≤ j
}

/// Builder for `maximize c·x + c₀` over free `x ∈ ℝ^m` subject to affine
/// orthant rows `≥ 0` and affine linear matrix inequalities `⪰ 0`.
///
/// Repeated entries are summed. Block rows and columns that then vanish
/// identically are dropped before the program reaches the solver, since they
/// carry no constraint and would only remove the interior of the cone.
#[derive(Clone, Debug)]
pub struct LmiBuilder {
    num_vars: usize,
    objective: Vec<f64>,
    objective_constant: f64,
    rows: Vec<AffineRow>,
    blocks: Vec<AffineBlock>,
}

impl LmiBuilder {
    pub fn new(num_vars: usize) -> Self {
        LmiBuilder {
            num_vars,
            objective: vec![0.0; num_vars],
            objective_constant: 0.0,
            rows: Vec::new(),
            blocks: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_objective(&mut self, var: usize, coef: f64) {
        self.objective[var] = coef;
    }

    pub fn add_objective_constant(&mut self, c: f64) {
        self.objective_constant += c;
    }

    /// Adds the row `constant + Σ terms ≥ 0`.
    pub fn add_row(&mut self, constant: f64, terms: Vec<(usize, f64)>) {
        self.rows.push(AffineRow { constant, terms });
    }

    /// Opens a new `size × size` LMI block and returns its index.
    pub fn add_block(&mut self, size: usize) -> usize {
        self.blocks.push(AffineBlock { size, constant: Vec::new(), terms: Vec::new() });
        self.blocks.len() - 1
    }

    /// Adds `coef` to the symmetric entry pair (i, j) of the constant part.
    pub fn block_constant(&mut self, block: usize, i: usize, j: usize, coef: f64) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        if coef != 0.0 {
            self.blocks[block].constant.push((i, j, coef));
        }
    }

    /// Adds `coef · x_var` to the symmetric entry pair (i, j).
    pub fn block_term(&mut self, block: usize, var: usize, i: usize, j: usize, coef: f64) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        if coef != 0.0 {
            self.blocks[block].terms.push((var, i, j, coef));
        }
    }

    pub fn build(self) -> Result<LmiProgram> {
        let m = self.num_vars;
        if m == 0 {
            return Err(Error::InvalidProblem("LMI program has no free variables".into()));
        }

        // Orthant rows: drop constant rows, reject violated ones.
        let mut kept_rows = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let mut row = row.clone();
            row.terms.sort_by_key(|t| t.0);
            row.terms = merge_terms(&row.terms);
            if row.terms.is_empty() {
                if row.constant < -1e-12 {
                    return Err(Error::InvalidProblem(format!("row {r} is the infeasible constant {}", row.constant)));
                }
                continue;
            }
            kept_rows.push(row);
        }

        // PSD blocks: compress away identically-zero rows/columns.
        let mut kept_blocks = Vec::new();
        for blk in &self.blocks {
            let blk = merged_block(blk);
            let mut nonzero = vec![false; blk.size];
            for &(i, j, v) in &blk.constant {
                if v != 0.0 {
                    nonzero[i] = true;
                    nonzero[j] = true;
                }
            }
            for &(_, i, j, v) in &blk.terms {
                if v != 0.0 {
                    nonzero[i] = true;
                    nonzero[j] = true;
                }
            }
            let map: Vec<Option<usize>> = {
                let mut next = 0;
                nonzero
                    .iter()
                    .map(|&nz| {
                        nz.then(|| {
                            next += 1;
                            next - 1
                        })
                    })
                    .collect()
            };
            let size = nonzero.iter().filter(|&&b| b).count();
            if size == 0 {
                continue;
            }
            let remap = |i: usize| map[i].expect("nonzero row");
            kept_blocks.push(AffineBlock {
                size,
                constant: blk.constant.iter().map(|&(i, j, v)| (remap(i), remap(j), v)).collect(),
                terms: blk.terms.iter().map(|&(k, i, j, v)| (k, remap(i), remap(j), v)).collect(),
            });
        }

        let cone = ConeSpec::new(kept_rows.len(), kept_blocks.iter().map(|b| b.size).collect())?;
        let mut constraints: Vec<Constraint> = (0..m)
            .map(|j| Constraint { a: SparseBlockSym::new(cone.num_blocks()), b: -self.objective[j] })
            .collect();
        let mut objective = BlockSymMatrix::zeros(&cone);
        for (r, row) in kept_rows.iter().enumerate() {
            objective.orthant_mut()[r] = -row.constant;
            for &(var, coef) in &row.terms {
                constraints[var].a.add_orthant(r, coef);
            }
        }
        for (k, blk) in kept_blocks.iter().enumerate() {
            let c = objective.block_mut(k);
            for &(i, j, v) in &blk.constant {
                c[(i, j)] -= v;
                if i != j {
                    c[(j, i)] -= v;
                }
            }
            for &(var, i, j, coef) in &blk.terms {
                constraints[var].a.add_block(k, i, j, coef);
            }
        }
        if let Some(var) = constraints.iter().position(|c| c.a.is_empty() && c.b != 0.0) {
            return Err(Error::InvalidProblem(format!(
                "variable {var} appears in the objective but in no constraint (unbounded)"
            )));
        }
        let problem = ConicProblem::with_offset(cone, objective, constraints, -self.objective_constant)?;
        Ok(LmiProgram {
            problem,
            objective: self.objective,
            objective_constant: self.objective_constant,
            rows: self.rows,
            blocks: self.blocks,
        })
    }
}

/// Sums repeated entries so that cancelling contributions leave no trace.
fn merged_block(blk: &AffineBlock) -> AffineBlock {
    let mut constant = blk.constant.clone();
    constant.sort_by_key(|&(i, j, _)| (i, j));
    let mut c_out: Vec<(usize, usize, f64)> = Vec::new();
    for (i, j, v) in constant {
        match c_out.last_mut() {
            Some(last) if (last.0, last.1) == (i, j) => last.2 += v,
            _ => c_out.push((i, j, v)),
        }
    }
    c_out.retain(|e| e.2 != 0.0);
    let mut terms = blk.terms.clone();
    terms.sort_by_key(|&(var, i, j, _)| (i, j, var));
    let mut t_out: Vec<(usize, usize, usize, f64)> = Vec::new();
    for (var, i, j, v) in terms {
        match t_out.last_mut() {
            Some(last) if (last.0, last.1, last.2) == (var, i, j) => last.3 += v,
            _ => t_out.push((var, i, j, v)),
        }
    }
    t_out.retain(|e| e.3 != 0.0);
    AffineBlock { size: blk.size, constant: c_out, terms: t_out }
}

fn merge_terms(terms: &[(usize, f64)]) -> Vec<(usize, f64)> {
    let mut out: Vec<(usize, f64)> = Vec::new();
    for &(v, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == v => last.1 += c,
            _ => out.push((v, c)),
        }
    }
    out.retain(|t| t.1 != 0.0);
    out
}

/// An LMI program together with its conic (primal standard form) encoding.
///
/// The free variables are the dual variables `y` of [`LmiProgram::problem`];
/// the LMI optimum equals `−(conic optimum)`.
#[derive(Clone, Debug)]
pub struct LmiProgram {
    problem: ConicProblem,
    objective: Vec<f64>,
    objective_constant: f64,
    rows: Vec<AffineRow>,
    blocks: Vec<AffineBlock>,
}

/// Evaluation of a candidate point against the original (uncompressed) LMI.
#[derive(Clone, Debug, PartialEq)]
pub struct LmiCheck {
    pub objective: f64,
    pub min_row: f64,
    pub min_block_eig: f64,
}

impl LmiCheck {
    pub fn is_feasible(&self, tol: f64) -> bool {
        self.min_row >= -tol && self.min_block_eig >= -tol
    }
}

impl LmiProgram {
    pub fn problem(&self) -> &ConicProblem {
        &self.problem
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum::<f64>() + self.objective_constant
    }

    /// Dense value of block `k` at `x` (original indexing).
    pub fn block_value(&self, k: usize, x: &[f64]) -> Mat {
        let blk = &self.blocks[k];
        let mut m = Mat::zeros(blk.size);
        let mut add = |i: usize, j: usize, v: f64| {
            m[(i, j)] += v;
            if i != j {
                m[(j, i)] += v;
            }
        };
        for &(i, j, v) in &blk.constant {
            add(i, j, v);
        }
        for &(var, i, j, v) in &blk.terms {
            add(i, j, v * x[var]);
        }
        m
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Checks `x` against every row and block of the program as written.
    pub fn check(&self, x: &[f64]) -> Result<LmiCheck> {
        if x.len() != self.num_vars() {
            return Err(Error::ShapeMismatch(format!("point has {} entries, expected {}", x.len(), self.num_vars())));
        }
        let min_row = self
            .rows
            .iter()
            .map(|r| r.constant + r.terms.iter().map(|&(v, c)| c * x[v]).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        let min_block_eig =
            (0..self.blocks.len()).map(|k| min_eigenvalue(&self.block_value(k, x))).fold(f64::INFINITY, f64::min);
        Ok(LmiCheck { objective: self.objective_value(x), min_row, min_block_eig })
    }
}
