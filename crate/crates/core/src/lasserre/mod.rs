// SPDX-License-Identifier: Apache-2.0

//! Lasserre hierarchy for the independence number of an explicit graph, and
//! the ϑ′ / ϑ programs.
//!
//! Level `t` uses one scalar per vertex subset of size at most `2t` and the
//! moment matrix `M_t(y)` indexed by subsets of size at most `t`, with entry
//! `(I, J)` equal to `y_{I ∪ J}`. It is written as an LMI in those scalars.

use crate::bounds::{run_program, BoundParams, BoundResult, BoundRun, Method, Side};
use crate::conic::{BlockSymMatrix, ConeSpec, ConicProblem, Constraint, LmiBuilder, LmiCheck, LmiProgram, SparseBlockSym};
use crate::error::{Error, Result};
use crate::hamming::Graph;
use crate::linalg::Mat;
use std::collections::HashMap;


/// Largest number of scalar unknowns a program may have before it is refused.
pub const MAX_PROGRAM_VARIABLES: usize = 20_000;

/// Ranks subsets of `{0, …, n−1}` of size at most `order`, ordered by size
/// and then by bitmask value.
#[derive(Clone, Debug)]
pub struct SubsetIndex {
    n: usize,
    order: usize,
    sets: Vec<u64>,
    rank: HashMap<u64, usize>,
}

impl SubsetIndex {
    pub fn new(n: usize, order: usize) -> Result<Self> {
        if n > 64 {
            return Err(Error::OutOfRange(format!("ground set of {n} elements exceeds 64")));
        }
        let count = subset_count(n, order);
        if count > MAX_PROGRAM_VARIABLES as u128 {
            return Err(Error::CapExceeded { what: "subsets", size: count.min(usize::MAX as u128) as usize, cap: MAX_PROGRAM_VARIABLES });
        }
        let mut sets = Vec::with_capacity(count as usize);
        for size in 0..=order.min(n) {
            push_subsets(n, size, &mut sets);
        }
        let rank = sets.iter().enumerate().map(|(r, &s)| (s, r)).collect();
        Ok(SubsetIndex { n, order, sets, rank })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn rank(&self, set: u64) -> Option<usize> {
        self.rank.get(&set).copied()
    }

    pub fn unrank(&self, r: usize) -> Option<u64> {
        self.sets.get(r).copied()
    }

    pub fn sets(&self) -> &[u64] {
        &self.sets
    }
}

/// `Σ_{i ≤ order} C(n, i)`.
pub fn subset_count(n: usize, order: usize) -> u128 {
    let mut total = 0u128;
    let mut c = 1u128;
    for i in 0..=order.min(n) {
        total += c;
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    total
}

fn push_subsets(n: usize, size: usize, out: &mut Vec<u64>) {
    if size == 0 {
        out.push(0);
        return;
    }
    // Gosper's hack walks same-popcount masks in increasing order.
    let mut s: u64 = (1u64 << size) - 1;
    let limit = if n == 64 { None } else { Some(1u64 << n) };
    loop {
        if let Some(l) = limit {
            if s >= l {
                break;
            }
        }
        out.push(s);
        let c = s & s.wrapping_neg();
        let r = s.wrapping_add(c);
        if r == 0 {
            break;
        }
        s = (((r ^ s) >> 2) / c) | r;
    }
}

fn vertex_mask(vertices: &[usize], n: usize) -> Result<u64> {
    let mut m = 0u64;
    for &v in vertices {
        if v >= n {
            return Err(Error::OutOfRange(format!("vertex {v} outside 0..{n}")));
        }
        m |= 1 << v;
    }
    Ok(m)
}

/// A vector indexed by the subsets of size at most `2t`.
#[derive(Clone, Debug)]
pub struct MomentVector {
    t: usize,
    index: SubsetIndex,
    values: Vec<f64>,
}

impl MomentVector {
    pub fn zeros(n: usize, t: usize) -> Result<Self> {
        let index = SubsetIndex::new(n, 2 * t)?;
        let values = vec![0.0; index.len()];
        Ok(MomentVector { t, index, values })
    }

    pub fn level(&self) -> usize {
        self.t
    }

    pub fn index(&self) -> &SubsetIndex {
        &self.index
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, set: u64) -> Option<f64> {
        self.index.rank(set).map(|r| self.values[r])
    }

    pub fn set(&mut self, set: u64, v: f64) -> Result<()> {
        let r = self.index.rank(set).ok_or_else(|| Error::OutOfRange(format!("subset {set:#x} not indexed")))?;
        self.values[r] = v;
        Ok(())
    }

    /// `y_∅ = 1`.
    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.values[0] - 1.0).abs() <= tol
    }

    pub fn is_nonnegative(&self, tol: f64) -> bool {
        self.values.iter().all(|&v| v >= -tol)
    }

    /// `Σ_i y_{{i}}`.
    pub fn singleton_sum(&self) -> f64 {
        (0..self.index.n).map(|i| self.values[i + 1]).sum()
    }

    /// Largest `|y_J|` over indexed sets `J` that contain an edge of `g`.
    pub fn max_on_edges(&self, g: &Graph) -> f64 {
        self.index
            .sets
            .iter()
            .zip(&self.values)
            .filter(|(&s, _)| contains_edge(g, s))
            .fold(0.0f64, |m, (_, v)| m.max(v.abs()))
    }
}

/// Characteristic moment vector of the vertex set `set` at level `t`:
/// `y_J = 1` if `J ⊆ set`, else 0.
pub fn char_vector(n: usize, set: &[usize], t: usize) -> Result<MomentVector> {
    let mask = vertex_mask(set, n)?;
    let mut y = MomentVector::zeros(n, t)?;
    for (v, &s) in y.values.iter_mut().zip(&y.index.sets) {
        *v = if s & !mask == 0 { 1.0 } else { 0.0 };
    }
    Ok(y)
}

/// `M_t(y)`; needs `y` defined on subsets of size `2t`.
pub fn moment_matrix(y: &MomentVector, t: usize) -> Result<Mat> {
    if 2 * t > y.index.order {
        return Err(Error::OutOfRange(format!("moment vector of order {} cannot fill M_{t}", y.index.order)));
    }
    let rows = SubsetIndex::new(y.index.n, t)?;
    let m = rows.len();
    let mut out = Mat::zeros(m);
    for (a, &i) in rows.sets.iter().enumerate() {
        for (b, &j) in rows.sets.iter().enumerate().skip(a) {
            let v = y.get(i | j).expect("union of two sets of size ≤ t is indexed");
            out[(a, b)] = v;
            out[(b, a)] = v;
        }
    }
    Ok(out)
}

fn contains_edge(g: &Graph, set: u64) -> bool {
    // callers guarantee at most 64 vertices, so each row is one word
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if g.row(v)[0] & set != 0 {
            return true;
        }
    }
    false
}

/// Level-`t` program for `g` together with its variable layout.
#[derive(Clone, Debug)]
pub struct LasserreProgram {
    t: usize,
    n: usize,
    index: SubsetIndex,
    /// variable number of each indexed subset, `None` when fixed
    var_of: Vec<Option<usize>>,
    lmi: LmiProgram,
}

impl LasserreProgram {
    pub fn level(&self) -> usize {
        self.t
    }

    pub fn subsets(&self) -> &SubsetIndex {
        &self.index
    }

    pub fn lmi(&self) -> &LmiProgram {
        &self.lmi
    }

    pub fn problem(&self) -> &ConicProblem {
        self.lmi.problem()
    }

    pub fn num_vars(&self) -> usize {
        self.lmi.num_vars()
    }

    /// Moment vector from a point of the LMI.
    pub fn moments(&self, x: &[f64]) -> Result<MomentVector> {
        if x.len() != self.num_vars() {
            return Err(Error::ShapeMismatch(format!("point has {} entries, expected {}", x.len(), self.num_vars())));
        }
        let mut y = MomentVector::zeros(self.n, self.t)?;
        y.values[0] = 1.0;
        for (r, v) in self.var_of.iter().enumerate() {
            if let Some(v) = v {
                y.values[r] = x[*v];
            }
        }
        Ok(y)
    }

    /// LMI point of a moment vector. Values on fixed subsets are returned
    /// separately as the largest deviation from their fixed value.
    pub fn point(&self, y: &MomentVector) -> Result<(Vec<f64>, f64)> {
        if y.index.n != self.n || y.t != self.t {
            return Err(Error::ShapeMismatch("moment vector has the wrong ground set or level".into()));
        }
        let mut x = vec![0.0; self.num_vars()];
        let mut fixed_dev = (y.values[0] - 1.0).abs();
        for (r, v) in self.var_of.iter().enumerate().skip(1) {
            match v {
                Some(v) => x[*v] = y.values[r],
                None => fixed_dev = fixed_dev.max(y.values[r].abs()),
            }
        }
        Ok((x, fixed_dev))
    }

    /// Evaluates a moment vector: objective, smallest row, smallest moment
    /// matrix eigenvalue, and the largest violation of the fixed values.
    pub fn check(&self, y: &MomentVector) -> Result<(LmiCheck, f64)> {
        let (x, dev) = self.point(y)?;
        Ok((self.lmi.check(&x)?, dev))
    }
}

/// Builds `las_t(g)`: maximize `Σ y_{{i}}` subject to `y_∅ = 1`, `y ≥ 0`,
/// `y_e = 0` on edges and `M_t(y) ⪰ 0`.
pub fn build_lasserre(g: &Graph, t: usize) -> Result<LasserreProgram> {
    build_lasserre_with(g, t, false)
}

/// As [`build_lasserre`]. With `reduce`, every subset containing an edge is
/// fixed at 0 up front: a zero diagonal entry `y_I` of a PSD `M_t(y)` forces
/// its whole row, and so every `y_{I ∪ J}`, to vanish. The optimum is the same.
pub fn build_lasserre_with(g: &Graph, t: usize, reduce: bool) -> Result<LasserreProgram> {
    if t == 0 {
        return Err(Error::OutOfRange("Lasserre level must be at least 1".into()));
    }
    let n = g.num_vertices();
    if n > 64 {
        return Err(Error::CapExceeded { what: "graph vertices", size: n, cap: 64 });
    }
    let count = subset_count(n, 2 * t);
    if count > MAX_PROGRAM_VARIABLES as u128 {
        return Err(Error::CapExceeded { what: "Lasserre variables", size: count.min(usize::MAX as u128) as usize, cap: MAX_PROGRAM_VARIABLES });
    }
    let index = SubsetIndex::new(n, 2 * t)?;
    let rows = SubsetIndex::new(n, t)?;

    let mut zero = vec![false; index.len()];
    if reduce {
        for (r, &s) in index.sets.iter().enumerate() {
            zero[r] = contains_edge(g, s);
        }
    } else {
        for (u, v) in g.edges() {
            zero[index.rank((1 << u) | (1 << v)).expect("pairs are indexed")] = true;
        }
    }

    let mut var_of = vec![None; index.len()];
    let mut nv = 0;
    for r in 1..index.len() {
        if !zero[r] {
            var_of[r] = Some(nv);
            nv += 1;
        }
    }

    let mut b = LmiBuilder::new(nv);
    for i in 0..n {
        if let Some(v) = var_of[i + 1] {
            b.set_objective(v, 1.0);
        }
    }
    for v in var_of.iter().flatten() {
        b.add_row(0.0, vec![(*v, 1.0)]);
    }
    let blk = b.add_block(rows.len());
    for (a, &i) in rows.sets.iter().enumerate() {
        for (c, &j) in rows.sets.iter().enumerate().skip(a) {
            let r = index.rank(i | j).expect("union is indexed");
            if r == 0 {
                b.block_constant(blk, a, c, 1.0);
            } else if let Some(v) = var_of[r] {
                b.block_term(blk, v, a, c, 1.0);
            }
        }
    }
    let lmi = b.build()?;
    Ok(LasserreProgram { t, n, index, var_of, lmi })
}

/// Solved level-`t` bound with its moment vector.
#[derive(Clone, Debug)]
pub struct LasserreRun {
    pub run: BoundRun,
    pub moments: MomentVector,
}

pub fn las_run(g: &Graph, t: usize, params: &BoundParams) -> Result<LasserreRun> {
    let prog = build_lasserre(g, t)?;
    let run = run_program(prog.problem(), Side::Lmi, g.num_vertices() as u32, 0, Method::Lasserre(t as u32), params)?;
    let moments = prog.moments(&run.solution.y)?;
    Ok(LasserreRun { run, moments })
}

/// `las_t(g)`; an error unless the solver reports optimality.
pub fn las(g: &Graph, t: usize, params: &BoundParams) -> Result<BoundResult> {
    las_run(g, t, params)?.run.into_result()
}

/// ϑ′ (with `nonnegative`) or ϑ of `g`: maximize `⟨J, X⟩` over `X ⪰ 0`,
/// `Tr X = 1`, `X_ij = 0` on edges and, for ϑ′, `X ≥ 0` entrywise.
pub fn build_theta(g: &Graph, nonnegative: bool) -> Result<ConicProblem> {
    let n = g.num_vertices();
    let entries = n * (n + 1) / 2;
    if entries > MAX_PROGRAM_VARIABLES {
        return Err(Error::CapExceeded { what: "theta matrix entries", size: entries, cap: MAX_PROGRAM_VARIABLES });
    }
    if n == 0 {
        return Err(Error::InvalidProblem("graph has no vertices".into()));
    }
    let non_edges: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| !g.has_edge(i, j)).collect();
    let orthant = if nonnegative { non_edges.len() } else { 0 };
    let cone = ConeSpec::new(orthant, vec![n])?;
    let objective = BlockSymMatrix::new(vec![0.0; orthant], vec![Mat::from_row_major(n, vec![1.0; n * n])])?;

    let mut cons = Vec::new();
    let mut tr = SparseBlockSym::new(1);
    for i in 0..n {
        tr.add_block(0, i, i, 1.0);
    }
    cons.push(Constraint { a: tr, b: 1.0 });
    for (u, v) in g.edges() {
        let mut a = SparseBlockSym::new(1);
        a.add_block(0, u, v, 0.5);
        cons.push(Constraint { a, b: 0.0 });
    }
    if nonnegative {
        for (r, &(i, j)) in non_edges.iter().enumerate() {
            let mut a = SparseBlockSym::new(1);
            a.add_block(0, i, j, 0.5);
            a.add_orthant(r, -1.0);
            cons.push(Constraint { a, b: 0.0 });
        }
    }
    ConicProblem::new(cone, objective, cons)
}

pub fn theta_run(g: &Graph, nonnegative: bool, params: &BoundParams) -> Result<BoundRun> {
    let p = build_theta(g, nonnegative)?;
    run_program(&p, Side::Primal, g.num_vertices() as u32, 0, Method::ThetaPrime, params)
}

/// ϑ′(g).
pub fn theta_prime(g: &Graph, params: &BoundParams) -> Result<BoundResult> {
    theta_run(g, true, params)?.into_result()
}

/// Ten small graphs used to exercise the hierarchy: cycles, complete and
/// bipartite graphs, a path, complements and two Hamming graphs on 3 bits.
pub fn small_corpus() -> Vec<(String, Graph)> {
    let path = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).expect("valid edges");
    let k33 = Graph::from_edges(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])
        .expect("valid edges");
    let gnd = |n, d| crate::hamming::build_gnd(n, d).expect("small parameters");
    vec![
        ("C5".into(), Graph::cycle(5).expect("n ≥ 3")),
        ("C6".into(), Graph::cycle(6).expect("n ≥ 3")),
        ("C7".into(), Graph::cycle(7).expect("n ≥ 3")),
        ("petersen".into(), Graph::petersen()),
        ("K4".into(), Graph::complete(4)),
        ("K3,3".into(), k33),
        ("P5".into(), path),
        ("complement(C7)".into(), Graph::cycle(7).expect("n ≥ 3").complement()),
        ("G(3,2)".into(), gnd(3, 2)),
        ("G(3,3)".into(), gnd(3, 3)),
    ]
}
