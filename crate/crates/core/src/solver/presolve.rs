// SPDX-License-Identifier: Apache-2.0

use crate::conic::{BlockSymMatrix, ConeSpec, ConicProblem, Constraint, SolveStatus, SparseBlockSym};
use crate::linalg::{Mat, PivotedCholesky};

/// Relative pivot threshold on the unit-diagonal Gram matrix of the A_j.
const DEPENDENCE_TOL: f64 = 1e-12;

/// A fixed orthant coordinate: `x[coord] = value`, read off constraint
/// `constraint` whose only free entry is `coef · x[coord]`.
#[derive(Clone, Debug, PartialEq)]
struct Fixing {
    coord: usize,
    value: f64,
    constraint: usize,
    coef: f64,
}

/// Bookkeeping needed to lift a reduced solution back to the original program.
#[derive(Clone, Debug, PartialEq)]
pub struct PresolveMap {
    /// original orthant coordinate of each reduced coordinate
    orthant_keep: Vec<usize>,
    /// fixings in the order they were discovered
    fixings: Vec<Fixing>,
    /// original index of each reduced constraint
    kept_constraints: Vec<usize>,
    /// constraints dropped as linear combinations of kept ones
    dependent: Vec<usize>,
}

impl PresolveMap {
    pub fn num_fixed(&self) -> usize {
        self.fixings.len()
    }

    pub fn fixed_coordinates(&self) -> Vec<(usize, f64)> {
        self.fixings.iter().map(|f| (f.coord, f.value)).collect()
    }

    pub fn kept_constraints(&self) -> &[usize] {
        &self.kept_constraints
    }

    pub fn dependent_constraints(&self) -> &[usize] {
        &self.dependent
    }

    pub fn is_identity(&self, original: &ConicProblem) -> bool {
        self.fixings.is_empty()
            && self.dependent.is_empty()
            && self.kept_constraints.len() == original.num_constraints()
    }

    /// Lifts a reduced primal-dual pair to the original program. Multipliers
    /// of fixing constraints are chosen so that the dual slack of each fixed
    /// coordinate vanishes.
    pub fn postsolve(&self, original: &ConicProblem, x_red: &BlockSymMatrix, y_red: &[f64]) -> (BlockSymMatrix, Vec<f64>) {
        let mut x = BlockSymMatrix::zeros(original.cone());
        for (k, &orig) in self.orthant_keep.iter().enumerate() {
            x.orthant_mut()[orig] = x_red.orthant()[k];
        }
        for (k, b) in x_red.blocks().iter().enumerate() {
            *x.block_mut(k) = b.clone();
        }
        for f in &self.fixings {
            x.orthant_mut()[f.coord] = f.value;
        }

        let mut y = vec![0.0; original.num_constraints()];
        for (k, &j) in self.kept_constraints.iter().enumerate() {
            y[j] = y_red[k];
        }
        let c = original.objective().orthant();
        for f in self.fixings.iter().rev() {
            let mut s = -c[f.coord];
            for (j, con) in original.constraints().iter().enumerate() {
                if j == f.constraint || y[j] == 0.0 {
                    continue;
                }
                if let Some(&(_, a)) = con.a.orthant.iter().find(|e| e.0 == f.coord) {
                    s += y[j] * a;
                }
            }
            y[f.constraint] = -s / f.coef;
        }
        (x, y)
    }
}

/// Result of [`presolve`]. `problem` is `None` when no constraint survives.
#[derive(Clone, Debug)]
pub struct Presolved {
    pub problem: Option<ConicProblem>,
    pub cone: ConeSpec,
    pub objective: BlockSymMatrix,
    pub offset: f64,
    pub map: PresolveMap,
}

fn feas_scale(v: f64) -> f64 {
    1e-9 * (1.0 + v.abs())
}

/// Eliminates orthant coordinates fixed by singleton constraints (repeatedly,
/// since substitution can create new singletons) and drops linearly
/// dependent constraints found by pivoted Cholesky on the Gram matrix of the
/// `A_j`. Inconsistent systems yield `PrimalInfeasibleLikely`.
pub fn presolve(p: &ConicProblem) -> Result<Presolved, SolveStatus> {
    let m = p.num_constraints();
    let n_orth = p.cone().orthant_dim();
    let mut fixed: Vec<Option<f64>> = vec![None; n_orth];
    let mut fixings: Vec<Fixing> = Vec::new();
    let mut active = vec![true; m];

    loop {
        let mut changed = false;
        for (j, con) in p.constraints().iter().enumerate() {
            if !active[j] {
                continue;
            }
            let mut rhs = con.b;
            let mut free: Vec<(usize, f64)> = Vec::new();
            for &(r, a) in &con.a.orthant {
                match fixed[r] {
                    Some(v) => rhs -= a * v,
                    None => free.push((r, a)),
                }
            }
            let has_block = con.a.blocks.iter().any(|b| !b.is_empty());
            match (free.len(), has_block) {
                (0, false) => {
                    if rhs.abs() > feas_scale(con.b) {
                        return Err(SolveStatus::PrimalInfeasibleLikely);
                    }
                    active[j] = false;
                    changed = true;
                }
                (1, false) => {
                    let (r, a) = free[0];
                    let value = rhs / a;
                    if value < -feas_scale(value) {
                        return Err(SolveStatus::PrimalInfeasibleLikely);
                    }
                    let value = value.max(0.0);
                    fixed[r] = Some(value);
                    fixings.push(Fixing { coord: r, value, constraint: j, coef: a });
                    active[j] = false;
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }

    // Reduced cone and data.
    let orthant_keep: Vec<usize> = (0..n_orth).filter(|&r| fixed[r].is_none()).collect();
    let mut new_index = vec![usize::MAX; n_orth];
    for (k, &r) in orthant_keep.iter().enumerate() {
        new_index[r] = k;
    }
    let cone = ConeSpec::new(orthant_keep.len(), p.cone().psd_block_sizes().to_vec())
        .expect("block sizes unchanged");
    let c_orth = p.objective().orthant();
    let offset = p.offset() + fixings.iter().map(|f| c_orth[f.coord] * f.value).sum::<f64>();
    let objective = BlockSymMatrix::new(
        orthant_keep.iter().map(|&r| c_orth[r]).collect(),
        p.objective().blocks().to_vec(),
    )
    .expect("objective blocks already symmetric");

    let mut candidates: Vec<(usize, Constraint)> = Vec::new();
    for (j, con) in p.constraints().iter().enumerate() {
        if !active[j] {
            continue;
        }
        let mut a = SparseBlockSym::new(cone.num_blocks());
        let mut b = con.b;
        for &(r, v) in &con.a.orthant {
            match fixed[r] {
                Some(val) => b -= v * val,
                None => a.add_orthant(new_index[r], v),
            }
        }
        a.blocks = con.a.blocks.clone();
        candidates.push((j, Constraint { a, b }));
    }

    // Linear dependence among the remaining constraints.
    let mc = candidates.len();
    let mut dependent = Vec::new();
    let mut keep = vec![true; mc];
    if mc > 0 {
        let mut gram = Mat::zeros(mc);
        for i in 0..mc {
            for j in i..mc {
                let v = candidates[i].1.a.dot_sparse(&candidates[j].1.a);
                gram[(i, j)] = v;
                gram[(j, i)] = v;
            }
        }
        let scale: Vec<f64> = (0..mc).map(|i| gram[(i, i)].sqrt()).collect();
        if let Some(i) = scale.iter().position(|&s| s == 0.0) {
            // empty constraint that is not trivially satisfied was already
            // caught above; an empty one here has free entries that cancel
            if candidates[i].1.b.abs() > feas_scale(0.0) {
                return Err(SolveStatus::PrimalInfeasibleLikely);
            }
        }
        let mut unit = Mat::zeros(mc);
        for i in 0..mc {
            for j in 0..mc {
                let d = scale[i] * scale[j];
                unit[(i, j)] = if d > 0.0 { gram[(i, j)] / d } else { 0.0 };
            }
        }
        let chol = PivotedCholesky::factor(&unit, DEPENDENCE_TOL);
        if chol.rank < mc {
            let b_unit: Vec<f64> =
                (0..mc).map(|i| if scale[i] > 0.0 { candidates[i].1.b / scale[i] } else { 0.0 }).collect();
            for &j in &chol.perm[chol.rank..] {
                keep[j] = false;
                let col: Vec<f64> = (0..mc).map(|i| unit[(i, j)]).collect();
                let lambda = chol.solve(&col);
                let predicted: f64 = lambda.iter().zip(&b_unit).map(|(l, b)| l * b).sum();
                if (predicted - b_unit[j]).abs() > 1e-8 * (1.0 + b_unit[j].abs()) {
                    return Err(SolveStatus::PrimalInfeasibleLikely);
                }
                dependent.push(candidates[j].0);
            }
            dependent.sort_unstable();
        }
    }

    let mut kept_constraints = Vec::new();
    let mut constraints = Vec::new();
    for (idx, (j, con)) in candidates.into_iter().enumerate() {
        if keep[idx] {
            kept_constraints.push(j);
            constraints.push(con);
        }
    }
    let problem = if constraints.is_empty() {
        None
    } else {
        Some(
            ConicProblem::with_offset(cone.clone(), objective.clone(), constraints, offset)
                .expect("reduced problem conforms"),
        )
    };
    Ok(Presolved {
        problem,
        cone,
        objective,
        offset,
        map: PresolveMap { orthant_keep, fixings, kept_constraints, dependent },
    })
}
