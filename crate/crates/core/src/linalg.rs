// SPDX-License-Identifier: Apache-2.0

//! Small dense linear algebra used by the conic layer and the solver.
//!
//! Matrices are square, row-major and sized for the block dimensions that
//! appear after symmetry reduction (tens, at most a few hundred rows), so
//! every routine here is a straightforward O(n³) kernel.

use std::fmt;
use std::ops::{Index, IndexMut};

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Mat {
    n: usize,
    data: Vec<f64>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mat {
    pub fn zeros(n: usize) -> Self {
        Mat { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Mat::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Builds from row-major data; panics if `data.len() != n * n`.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n, "row-major data length");
        Mat { n, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Mat { n, data: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let mut t = Mat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.n;
        (0..n).all(|i| (i + 1..n).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol))
    }

    /// Replaces the matrix by (M + Mᵀ)/2.
    pub fn symmetrize(&mut self) {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                let v = 0.5 * (self[(i, j)] + self[(j, i)]);
                self[(i, j)] = v;
                self[(j, i)] = v;
            }
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Entrywise inner product Σ_ij A_ij B_ij, row-major order.
    pub fn dot(&self, other: &Mat) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&mut self, s: f64) {
        self.data.iter_mut().for_each(|v| *v *= s);
    }

    /// self += s * other
    pub fn axpy(&mut self, s: f64, other: &Mat) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        let n = self.n;
        debug_assert_eq!(n, other.n);
        let mut out = Mat::zeros(n);
        for i in 0..n {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// self * otherᵀ
    pub fn matmul_t(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            let a = self.row(i);
            for j in 0..n {
                out[(i, j)] = a.iter().zip(other.row(j)).map(|(x, y)| x * y).sum();
            }
        }
        out
    }

    pub fn mat_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

/// Result of a symmetric eigendecomposition: `m = vectors · diag(values) · vectorsᵀ`,
/// eigenvectors stored as columns, values ascending.
#[derive(Clone, Debug)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Mat,
}

/// Off-diagonal Frobenius mass, used as the Jacobi stopping quantity.
fn off_diagonal_norm(a: &Mat) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

const JACOBI_REL_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigenvalue iteration on a symmetric matrix.
///
/// Iterates sweeps until off(A) ≤ 1e-14·‖A‖_F. Only the upper triangle is
/// trusted; the input is symmetrized first.
pub fn jacobi_eigen(m: &Mat, want_vectors: bool) -> SymEigen {
    let n = m.dim();
    let mut a = m.clone();
    a.symmetrize();
    let mut v = if want_vectors { Mat::identity(n) } else { Mat::zeros(0) };
    let threshold = JACOBI_REL_TOL * a.frobenius_norm();

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                if want_vectors {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = c * vkp - s * vkq;
                        v[(k, q)] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = if want_vectors {
        let mut sorted = Mat::zeros(n);
        for (new, &old) in order.iter().enumerate() {
            for k in 0..n {
                sorted[(k, new)] = v[(k, old)];
            }
        }
        sorted
    } else {
        v
    };
    SymEigen { values, vectors }
}

/// Smallest eigenvalue of a symmetric matrix (`+∞` for an empty matrix).
pub fn min_eigenvalue(m: &Mat) -> f64 {
    jacobi_eigen(m, false).values.first().copied().unwrap_or(f64::INFINITY)
}

/// Lower Cholesky factor `L` with `m = L Lᵀ`; `None` if `m` is not
/// numerically positive definite.
pub fn cholesky(m: &Mat) -> Option<Mat> {
    let n = m.dim();
    let mut l = Mat::zeros(n);
    for j in 0..n {
        let mut d = m[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > 0.0) || !d.is_finite() {
            return None;
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Some(l)
}

/// Inverse of a lower-triangular matrix.
pub fn lower_inverse(l: &Mat) -> Mat {
    let n = l.dim();
    let mut inv = Mat::zeros(n);
    for j in 0..n {
        inv[(j, j)] = 1.0 / l[(j, j)];
        for i in j + 1..n {
            let mut s = 0.0;
            for k in j..i {
                s += l[(i, k)] * inv[(k, j)];
            }
            inv[(i, j)] = -s / l[(i, i)];
        }
    }
    inv
}

/// Cholesky factorization with symmetric (diagonal) pivoting of a positive
/// semidefinite matrix, stopping at pivots below `rel_tol · max_diag`.
///
/// `Pᵀ M P ≈ L Lᵀ` with `L` lower triangular of rank `rank`; `perm[k]` is the
/// original index placed at position `k`.
#[derive(Clone, Debug)]
pub struct PivotedCholesky {
    pub perm: Vec<usize>,
    pub factor: Mat,
    pub rank: usize,
}

impl PivotedCholesky {
    pub fn factor(m: &Mat, rel_tol: f64) -> Self {
        let n = m.dim();
        // only the lower triangle of `a` is kept current
        let mut a = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let max_diag = (0..n).fold(0.0f64, |acc, i| acc.max(a[(i, i)]));
        let floor = rel_tol * max_diag.max(f64::MIN_POSITIVE);
        let mut col = vec![0.0; n];
        let mut rank = 0;
        for k in 0..n {
            let mut piv = k;
            for i in k + 1..n {
                if a[(i, i)] > a[(piv, piv)] {
                    piv = i;
                }
            }
            if !(a[(piv, piv)] > floor) || !a[(piv, piv)].is_finite() {
                break;
            }
            if piv != k {
                swap_lower(&mut a, k, piv);
                perm.swap(k, piv);
            }
            let d = a[(k, k)].sqrt();
            a[(k, k)] = d;
            for i in k + 1..n {
                a[(i, k)] /= d;
                col[i] = a[(i, k)];
            }
            for i in k + 1..n {
                let lik = col[i];
                if lik == 0.0 {
                    continue;
                }
                let row = &mut a.data[i * n + k + 1..i * n + i + 1];
                for (r, c) in row.iter_mut().zip(&col[k + 1..=i]) {
                    *r -= lik * c;
                }
            }
            rank += 1;
        }
        let mut factor = Mat::zeros(n);
        for i in 0..n {
            for j in 0..rank.min(i + 1) {
                factor[(i, j)] = a[(i, j)];
            }
        }
        PivotedCholesky { perm, factor, rank }
    }

    /// Solves `M x = rhs` on the numerical range of `M`; components along
    /// dropped pivots are set to zero.
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let r = self.rank;
        let n = self.factor.dim();
        let l = &self.factor.data;
        let mut z = vec![0.0; r];
        for i in 0..r {
            let row = &l[i * n..i * n + i];
            let s: f64 = row.iter().zip(&z[..i]).map(|(a, b)| a * b).sum();
            z[i] = (rhs[self.perm[i]] - s) / l[i * n + i];
        }
        for i in (0..r).rev() {
            let zi = z[i] / l[i * n + i];
            z[i] = zi;
            let row = &l[i * n..i * n + i];
            for (zk, a) in z[..i].iter_mut().zip(row) {
                *zk -= a * zi;
            }
        }
        let mut x = vec![0.0; rhs.len()];
        for i in 0..r {
            x[self.perm[i]] = z[i];
        }
        x
    }
}

/// Symmetric swap of indices `p < q` acting on the lower triangle only.
fn swap_lower(a: &mut Mat, p: usize, q: usize) {
    let (p, q) = if p < q { (p, q) } else { (q, p) };
    let n = a.dim();
    let t = a[(p, p)];
    a[(p, p)] = a[(q, q)];
    a[(q, q)] = t;
    for j in 0..p {
        let t = a[(p, j)];
        a[(p, j)] = a[(q, j)];
        a[(q, j)] = t;
    }
    for i in p + 1..q {
        let t = a[(i, p)];
        a[(i, p)] = a[(q, i)];
        a[(q, i)] = t;
    }
    for i in q + 1..n {
        let t = a[(i, p)];
        a[(i, p)] = a[(i, q)];
        a[(i, q)] = t;
    }
}
