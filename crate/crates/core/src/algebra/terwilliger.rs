// SPDX-License-Identifier: Apache-2.0

use super::{binom, ExactInt, ZeroOneMatrix};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

/// Largest n for which [`terwilliger_basis`] materializes matrices.
pub const MAX_TERWILLIGER_BASIS_LENGTH: u32 = 8;
/// Largest n accepted by [`phi_homomorphism_check`].
const MAX_HOMOMORPHISM_LENGTH: u32 = 5;

/// Enumeration of the triples (i, j, t) with t ≤ i, j and i + j ≤ n + t,
/// ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerwilligerIndex {
    n: u32,
    triples: Vec<(u32, u32, u32)>,
    position: Vec<usize>,
}

impl TerwilligerIndex {
    pub fn new(n: u32) -> Self {
        let side = n as usize + 1;
        let mut triples = Vec::new();
        let mut position = vec![usize::MAX; side * side * side];
        for i in 0..=n {
            for j in 0..=n {
                for t in 0..=i.min(j) {
                    if i + j <= n + t {
                        position[(i as usize * side + j as usize) * side + t as usize] = triples.len();
                        triples.push((i, j, t));
                    }
                }
            }
        }
        TerwilligerIndex { n, triples, position }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> &[(u32, u32, u32)] {
        &self.triples
    }

    pub fn index_of(&self, i: u32, j: u32, t: u32) -> Option<usize> {
        if i > self.n || j > self.n || t > self.n {
            return None;
        }
        let side = self.n as usize + 1;
        let p = self.position[(i as usize * side + j as usize) * side + t as usize];
        (p != usize::MAX).then_some(p)
    }

    /// Index of the pattern of the word pair (x, y).
    pub fn pattern_of(&self, x: usize, y: usize) -> usize {
        let (i, j, t) = (x.count_ones(), y.count_ones(), (x & y).count_ones());
        self.index_of(i, j, t).expect("every pair has a pattern")
    }

    /// Coefficient vector of the identity matrix, Σ_i B^i_{i,i}.
    pub fn unit(&self) -> Vec<BigRational> {
        self.triples
            .iter()
            .map(|&(i, j, t)| if i == j && t == i { BigRational::one() } else { BigRational::zero() })
            .collect()
    }

    /// Coefficients of the transpose: a'(i, j, t) = a(j, i, t).
    pub fn transpose<T: Clone>(&self, a: &[T]) -> Vec<T> {
        self.triples.iter().map(|&(i, j, t)| a[self.index_of(j, i, t).expect("transpose in index")].clone()).collect()
    }
}

fn check_index(n: u32, i: u32, j: u32, t: u32, k: u32) -> Result<()> {
    if t > i || t > j || i + j > n + t || i > n || j > n {
        return Err(Error::OutOfRange(format!("({i},{j},{t}) is not a Terwilliger index for n={n}")));
    }
    if k > n / 2 {
        return Err(Error::OutOfRange(format!("block index k={k} exceeds ⌊n/2⌋ for n={n}")));
    }
    Ok(())
}

fn beta_unchecked(n: i64, i: i64, j: i64, t: i64, k: i64) -> ExactInt {
    let mut s = BigInt::zero();
    for u in 0..=n {
        let term = binom(u, t) * binom(n - 2 * k, u - k) * binom(n - k - u, i - u) * binom(n - k - u, j - u);
        if term.is_zero() {
            continue;
        }
        if (u - t).rem_euclid(2) == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    s
}

/// β^t_{i,j,k} = Σ_u (−1)^{u−t} binom(u,t) binom(n−2k,u−k) binom(n−k−u,i−u) binom(n−k−u,j−u).
pub fn beta(n: u32, i: u32, j: u32, t: u32, k: u32) -> Result<ExactInt> {
    check_index(n, i, j, t, k)?;
    Ok(beta_unchecked(n as i64, i as i64, j as i64, t as i64, k as i64))
}

/// The basis matrices B^t_{i,j} in index order; (B^t_{i,j})_{x,y} = 1 iff
/// wt x = i, wt y = j and |supp x ∩ supp y| = t.
pub fn terwilliger_basis(n: u32) -> Result<Vec<((u32, u32, u32), ZeroOneMatrix)>> {
    if n == 0 || n > MAX_TERWILLIGER_BASIS_LENGTH {
        return Err(Error::CapExceeded {
            what: "Terwilliger basis length",
            size: n as usize,
            cap: MAX_TERWILLIGER_BASIS_LENGTH as usize,
        });
    }
    let index = TerwilligerIndex::new(n);
    let dim = 1usize << n;
    let mut pattern = vec![0usize; dim * dim];
    for x in 0..dim {
        for y in 0..dim {
            pattern[x * dim + y] = index.pattern_of(x, y);
        }
    }
    Ok(index
        .triples()
        .iter()
        .enumerate()
        .map(|(p, &ijt)| (ijt, ZeroOneMatrix::from_fn(dim, |x, y| pattern[x * dim + y] == p)))
        .collect())
}

/// Σ_k (n−2k+1)² = binom(n+3, 3), in exact arithmetic.
pub fn dimension_identity(n: u32) -> bool {
    let lhs: BigInt = (0..=n / 2).map(|k| BigInt::from(n - 2 * k + 1).pow(2)).sum();
    lhs == binom(n as i64 + 3, 3)
}

/// β values and normalizers for one n, with the entries of every block.
#[derive(Clone, Debug)]
pub struct BetaTable {
    n: u32,
    index: TerwilligerIndex,
    blocks: Vec<BetaBlock>,
}

#[derive(Clone, Debug)]
struct BetaBlock {
    k: u32,
    /// binom(n−2k, i−k) for i = k..=n−k
    normalizers: Vec<BigInt>,
    /// (row, col, index position, β, β / sqrt(D_i D_j)) with row/col local
    entries: Vec<(usize, usize, usize, BigInt, f64)>,
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().expect("finite")
}

impl BetaTable {
    pub fn new(n: u32) -> Self {
        let index = TerwilligerIndex::new(n);
        let blocks = (0..=n / 2)
            .map(|k| {
                let normalizers: Vec<BigInt> = (k..=n - k).map(|i| binom((n - 2 * k) as i64, (i - k) as i64)).collect();
                let sqrt_d: Vec<f64> = normalizers.iter().map(|d| big_to_f64(d).sqrt()).collect();
                let mut entries = Vec::new();
                for (p, &(i, j, t)) in index.triples().iter().enumerate() {
                    if i < k || j < k || i > n - k || j > n - k {
                        continue;
                    }
                    let b = beta_unchecked(n as i64, i as i64, j as i64, t as i64, k as i64);
                    if b.is_zero() {
                        continue;
                    }
                    let (r, c) = ((i - k) as usize, (j - k) as usize);
                    let f = big_to_f64(&b) / (sqrt_d[r] * sqrt_d[c]);
                    entries.push((r, c, p, b, f));
                }
                BetaBlock { k, normalizers, entries }
            })
            .collect();
        BetaTable { n, index, blocks }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn index(&self) -> &TerwilligerIndex {
        &self.index
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Size n − 2k + 1 of block k.
    pub fn block_size(&self, k: usize) -> usize {
        self.blocks[k].normalizers.len()
    }

    pub fn normalizers(&self, k: usize) -> &[BigInt] {
        &self.blocks[k].normalizers
    }

    /// Nonzero entries of block k as (row, col, (i, j, t), normalized β);
    /// row = i − k, col = j − k.
    pub fn float_entries(&self, k: usize) -> impl Iterator<Item = (usize, usize, (u32, u32, u32), f64)> + '_ {
        self.blocks[k].entries.iter().map(|(r, c, p, _, f)| (*r, *c, self.index.triples()[*p], *f))
    }
}

/// φ(A) for one block k: `float = D^{-1/2} numer D^{-1/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ImageBlock {
    pub k: u32,
    /// row/column labels i = k..=n−k
    pub labels: Vec<u32>,
    /// N_{ij} = Σ_t a(i,j,t) β^t_{i,j,k}
    pub numer: Vec<Vec<BigRational>>,
    /// D = diag(binom(n−2k, i−k))
    pub normalizers: Vec<BigInt>,
    pub float: Mat,
}

/// Image of an element of the Terwilliger algebra under φ.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockImage {
    pub n: u32,
    pub blocks: Vec<ImageBlock>,
}

impl BlockImage {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.labels.len()).collect()
    }

    pub fn float_blocks(&self) -> Vec<Mat> {
        self.blocks.iter().map(|b| b.float.clone()).collect()
    }
}

fn check_coeffs(index: &TerwilligerIndex, len: usize) -> Result<()> {
    if len != index.len() {
        return Err(Error::ShapeMismatch(format!("{len} coefficients for {} basis elements", index.len())));
    }
    Ok(())
}

fn rat_to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("finite")
}

fn exact_image(table: &BetaTable, coeffs: &[BigRational]) -> BlockImage {
    let n = table.n;
    let blocks = table
        .blocks
        .iter()
        .map(|blk| {
            let s = blk.normalizers.len();
            let mut numer = vec![vec![BigRational::zero(); s]; s];
            for (r, c, p, b, _) in &blk.entries {
                if !coeffs[*p].is_zero() {
                    numer[*r][*c] += &coeffs[*p] * BigRational::from_integer(b.clone());
                }
            }
            let sqrt_d: Vec<f64> = blk.normalizers.iter().map(|d| big_to_f64(d).sqrt()).collect();
            let mut float = Mat::zeros(s);
            for r in 0..s {
                for c in 0..s {
                    float[(r, c)] = rat_to_f64(&numer[r][c]) / (sqrt_d[r] * sqrt_d[c]);
                }
            }
            ImageBlock { k: blk.k, labels: (blk.k..=n - blk.k).collect(), numer, normalizers: blk.normalizers.clone(), float }
        })
        .collect();
    BlockImage { n, blocks }
}

/// φ(Σ a(i,j,t) B^t_{i,j}) with exact numerators; block k entry (i, j) is
/// Σ_t a(i,j,t) binom(n−2k,i−k)^{−1/2} binom(n−2k,j−k)^{−1/2} β^t_{i,j,k}.
pub fn phi(n: u32, coeffs: &[BigRational]) -> Result<BlockImage> {
    let table = BetaTable::new(n);
    check_coeffs(&table.index, coeffs.len())?;
    Ok(exact_image(&table, coeffs))
}

/// Floating-point φ blocks from a precomputed table.
pub fn phi_f64(table: &BetaTable, coeffs: &[f64]) -> Result<Vec<Mat>> {
    check_coeffs(&table.index, coeffs.len())?;
    Ok((0..table.num_blocks())
        .map(|k| {
            let mut m = Mat::zeros(table.block_size(k));
            for (r, c, p, _, f) in &table.blocks[k].entries {
                m[(*r, *c)] += coeffs[*p] * f;
            }
            m
        })
        .collect())
}

/// Outcome of [`phi_homomorphism_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomomorphismReport {
    pub n: u32,
    pub products_checked: usize,
    pub transposes_checked: usize,
    pub unit_checked: bool,
}

fn random_coeffs(rng: &mut ChaCha8Rng, len: usize) -> Vec<BigRational> {
    (0..len)
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(-6i64..=6)), BigInt::from(rng.gen_range(1i64..=4))))
        .collect()
}

/// Coefficients of the product AB in the basis, read off one representative
/// pair (x, y) per pattern from the explicit 2ⁿ × 2ⁿ matrices.
fn product_coeffs(index: &TerwilligerIndex, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let dim = 1usize << index.n();
    index
        .triples()
        .iter()
        .map(|&(i, j, t)| {
            let x = (1usize << i) - 1;
            // y has t ones inside supp x and j − t ones after it
            let y = ((1usize << t) - 1) | (((1usize << (j - t)) - 1) << i);
            let mut s = BigRational::zero();
            for z in 0..dim {
                let (p, q) = (&a[index.pattern_of(x, z)], &b[index.pattern_of(z, y)]);
                if !p.is_zero() && !q.is_zero() {
                    s += p * q;
                }
            }
            s
        })
        .collect()
}

/// Verifies in exact rational arithmetic that φ is unital, multiplicative
/// and transpose-preserving on `trials` random pairs, comparing numerators
/// through N_{AB} = N_A D⁻¹ N_B and N_{Aᵀ} = N_Aᵀ.
pub fn phi_homomorphism_check(n: u32, trials: usize, seed: u64) -> Result<HomomorphismReport> {
    if n == 0 || n > MAX_HOMOMORPHISM_LENGTH {
        return Err(Error::CapExceeded { what: "homomorphism check length", size: n as usize, cap: MAX_HOMOMORPHISM_LENGTH as usize });
    }
    let table = BetaTable::new(n);
    let index = &table.index;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let unit = exact_image(&table, &index.unit());
    for blk in &unit.blocks {
        for (r, row) in blk.numer.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                let expect = if r == c { BigRational::from_integer(blk.normalizers[r].clone()) } else { BigRational::zero() };
                if *v != expect {
                    return Err(Error::Verification(format!(
                        "φ(I) ≠ I at n={n}, k={}, entry ({}, {})",
                        blk.k, blk.labels[r], blk.labels[c]
                    )));
                }
            }
        }
    }

    let mut report = HomomorphismReport { n, products_checked: 0, transposes_checked: 0, unit_checked: true };
    for _ in 0..trials {
        let a = random_coeffs(&mut rng, index.len());
        let b = random_coeffs(&mut rng, index.len());
        let ab = product_coeffs(index, &a, &b);
        let (ia, ib, iab) = (exact_image(&table, &a), exact_image(&table, &b), exact_image(&table, &ab));
        for ((ba, bb), bab) in ia.blocks.iter().zip(&ib.blocks).zip(&iab.blocks) {
            let s = ba.labels.len();
            for r in 0..s {
                for c in 0..s {
                    let mut v = BigRational::zero();
                    for m in 0..s {
                        v += &ba.numer[r][m] * &bb.numer[m][c] / BigRational::from_integer(ba.normalizers[m].clone());
                    }
                    if v != bab.numer[r][c] {
                        return Err(Error::Verification(format!(
                            "φ(AB) ≠ φ(A)φ(B) at n={n}, k={}, entry ({}, {})",
                            ba.k, ba.labels[r], ba.labels[c]
                        )));
                    }
                }
            }
        }
        report.products_checked += 1;

        let at = exact_image(&table, &index.transpose(&a));
        for (bt, ba) in at.blocks.iter().zip(&ia.blocks) {
            let s = ba.labels.len();
            for r in 0..s {
                for c in 0..s {
                    if bt.numer[r][c] != ba.numer[c][r] {
                        return Err(Error::Verification(format!(
                            "φ(Aᵀ) ≠ φ(A)ᵀ at n={n}, k={}, entry ({}, {})",
                            ba.k, ba.labels[r], ba.labels[c]
                        )));
                    }
                }
            }
        }
        report.transposes_checked += 1;
    }
    Ok(report)
}

/// CSV rows `n,i,j,t,k,value` for every block entry (k ≤ i, j ≤ n − k).
pub fn beta_csv(n: u32) -> String {
    let index = TerwilligerIndex::new(n);
    let mut out = String::from("n,i,j,t,k,value\n");
    for k in 0..=n / 2 {
        for &(i, j, t) in index.triples() {
            if i < k || j < k || i > n - k || j > n - k {
                continue;
            }
            let b = beta_unchecked(n as i64, i as i64, j as i64, t as i64, k as i64);
            writeln!(out, "{n},{i},{j},{t},{k},{b}").unwrap();
        }
    }
    out
}
