// SPDX-License-Identifier: Apache-2.0

//! Exact combinatorics of the Hamming scheme: binomials, Krawtchouk
//! polynomials, the Bose–Mesner basis, and the Terwilliger algebra with its
//! block diagonalization.

mod terwilliger;

pub use terwilliger::{
    beta, beta_csv, dimension_identity, phi, phi_f64, phi_homomorphism_check, terwilliger_basis, BetaTable,
    BlockImage, HomomorphismReport, ImageBlock, TerwilligerIndex, MAX_TERWILLIGER_BASIS_LENGTH,
};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision integer used for all exact tables.
pub type ExactInt = BigInt;

/// Largest n for which [`bose_mesner_basis`] materializes matrices.
pub const MAX_BOSE_MESNER_LENGTH: u32 = 10;

/// Binomial coefficient with `binom(a, b) = 0` when `b < 0`, `b > a` or `a < 0`.
pub fn binom(a: i64, b: i64) -> ExactInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// K_r(x) = Σ_j (−1)^j binom(x, j) binom(n − x, r − j).
pub fn krawtchouk(n: u32, r: u32, x: u32) -> Result<ExactInt> {
    if r > n || x > n {
        return Err(Error::OutOfRange(format!("krawtchouk needs 0 ≤ r, x ≤ n, got n={n} r={r} x={x}")));
    }
    let (n, r, x) = (n as i64, r as i64, x as i64);
    let mut s = BigInt::zero();
    for j in 0..=r {
        let term = binom(x, j) * binom(n - x, r - j);
        if j % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    Ok(s)
}

/// P[r][x] = K_r(x) for r, x ∈ 0..=n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrawtchoukTable {
    n: u32,
    p: Vec<Vec<ExactInt>>,
}

impl KrawtchoukTable {
    pub fn new(n: u32) -> Self {
        let p = (0..=n).map(|r| (0..=n).map(|x| krawtchouk(n, r, x).expect("in range")).collect()).collect();
        KrawtchoukTable { n, p }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn get(&self, r: u32, x: u32) -> &ExactInt {
        &self.p[r as usize][x as usize]
    }

    pub fn rows(&self) -> &[Vec<ExactInt>] {
        &self.p
    }
}

/// Square 0/1 matrix indexed by words of F₂ⁿ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroOneMatrix {
    dim: usize,
    data: Vec<u8>,
}

impl ZeroOneMatrix {
    fn from_fn(dim: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut data = vec![0u8; dim * dim];
        for x in 0..dim {
            for y in 0..dim {
                data[x * dim + y] = f(x, y) as u8;
            }
        }
        ZeroOneMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.data[x * self.dim + y]
    }

    pub fn transpose(&self) -> Self {
        ZeroOneMatrix::from_fn(self.dim, |x, y| self.get(y, x) == 1)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|&&v| v == 1).count()
    }

    /// Integer matrix-vector product.
    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        (0..self.dim).map(|x| (0..self.dim).filter(|&y| self.get(x, y) == 1).map(|y| v[y]).sum()).collect()
    }
}

/// Distance matrices B_0..B_n with (B_r)_{x,y} = 1 iff d(x, y) = r.
pub fn bose_mesner_basis(n: u32) -> Result<Vec<ZeroOneMatrix>> {
    if n == 0 || n > MAX_BOSE_MESNER_LENGTH {
        return Err(Error::CapExceeded { what: "Bose-Mesner basis length", size: n as usize, cap: MAX_BOSE_MESNER_LENGTH as usize });
    }
    let dim = 1usize << n;
    Ok((0..=n).map(|r| ZeroOneMatrix::from_fn(dim, |x, y| (x ^ y).count_ones() == r)).collect())
}

/// Character χ_a with (χ_a)_x = (−1)^{a·x}.
pub fn character(n: u32, a: usize) -> Vec<i64> {
    (0..1usize << n).map(|x| if (a & x).count_ones() % 2 == 0 { 1 } else { -1 }).collect()
}

/// Checks B_r χ_a = K_r(wt a) χ_a for every r and a, exactly.
pub fn krawtchouk_eigen_check(n: u32) -> Result<()> {
    let basis = bose_mesner_basis(n)?;
    let table = KrawtchoukTable::new(n);
    for a in 0..1usize << n {
        let chi = character(n, a);
        let wt = a.count_ones();
        for (r, b) in basis.iter().enumerate() {
            let lambda: i64 = table.get(r as u32, wt).try_into().map_err(|_| Error::OutOfRange("eigenvalue overflow".into()))?;
            let img = b.mul_vec(&chi);
            if img.iter().zip(&chi).any(|(u, c)| *u != lambda * c) {
                return Err(Error::Verification(format!("B_{r} χ_a ≠ K_{r}({wt}) χ_a for n={n}, a={a:#b}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
