// SPDX-License-Identifier: Apache-2.0

use super::*;
use crate::linalg::{jacobi_eigen, Mat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn binomial_convention() {
    assert_eq!(binom(5, 2), int(10));
    assert_eq!(binom(5, -1), int(0));
    assert_eq!(binom(5, 6), int(0));
    assert_eq!(binom(-1, 0), int(0));
    assert_eq!(binom(0, 0), int(1));
    assert_eq!(binom(64, 32), "1832624140942590534".parse::<BigInt>().unwrap());
}

#[test]
fn krawtchouk_examples() {
    for n in 0..=12 {
        for x in 0..=n {
            assert_eq!(krawtchouk(n, 0, x).unwrap(), int(1));
        }
        for r in 0..=n {
            assert_eq!(krawtchouk(n, r, 0).unwrap(), binom(n as i64, r as i64));
        }
    }
    for x in 0..=7 {
        assert_eq!(krawtchouk(7, 1, x).unwrap(), int(7 - 2 * x as i64));
    }
    assert!(krawtchouk(4, 5, 0).is_err());
    assert!(krawtchouk(4, 0, 5).is_err());
    let t = KrawtchoukTable::new(9);
    assert_eq!(t.rows().len(), 10);
    assert_eq!(*t.get(3, 0), int(84));
}

#[test]
fn krawtchouk_orthogonality() {
    for n in 0..=20u32 {
        let t = KrawtchoukTable::new(n);
        for r in 0..=n {
            for s in 0..r {
                let sum: BigInt =
                    (0..=n).map(|x| binom(n as i64, x as i64) * t.get(r, x) * t.get(s, x)).sum();
                assert!(sum.is_zero(), "n={n} r={r} s={s}");
            }
        }
    }
}

#[test]
fn bose_mesner_structure() {
    for n in 1..=6 {
        let basis = bose_mesner_basis(n).unwrap();
        let dim = 1usize << n;
        for x in 0..dim {
            for y in 0..dim {
                assert_eq!(basis[0].get(x, y), (x == y) as u8);
                assert_eq!(basis.iter().map(|b| b.get(x, y)).sum::<u8>(), 1);
            }
        }
        for (r, b) in basis.iter().enumerate() {
            let ones = vec![1i64; dim];
            let sums = b.mul_vec(&ones);
            assert!(sums.iter().all(|&s| BigInt::from(s) == binom(n as i64, r as i64)));
        }
        krawtchouk_eigen_check(n).unwrap();
    }
    assert!(bose_mesner_basis(11).is_err());
}

#[test]
fn index_counts() {
    for n in 0..=20 {
        let idx = TerwilligerIndex::new(n);
        assert_eq!(BigInt::from(idx.len()), binom(n as i64 + 3, 3));
        for (p, &(i, j, t)) in idx.triples().iter().enumerate() {
            assert_eq!(idx.index_of(i, j, t), Some(p));
        }
    }
    let idx = TerwilligerIndex::new(3);
    assert_eq!(idx.index_of(2, 2, 0), None);
    assert_eq!(idx.index_of(4, 0, 0), None);
}

#[test]
fn dimension_identity_up_to_64() {
    for n in 0..=64 {
        assert!(dimension_identity(n), "n={n}");
    }
}

/// For k = 0 the block acts on normalized weight-class indicators, so
/// β^t_{i,j,0} counts pairs (x, y) with wt x = i, wt y = j, overlap t.
#[test]
fn beta_block_zero_counts_pairs() {
    for n in 0..=7u32 {
        for &(i, j, t) in TerwilligerIndex::new(n).triples() {
            let dim = 1usize << n;
            let count = (0..dim)
                .filter(|x| x.count_ones() == i)
                .map(|x| (0..dim).filter(|y| y.count_ones() == j && (x & y).count_ones() == t).count())
                .sum::<usize>();
            assert_eq!(beta(n, i, j, t, 0).unwrap(), BigInt::from(count), "n={n} ({i},{j},{t})");
        }
    }
    assert_eq!(beta(2, 1, 1, 1, 0).unwrap(), int(2));
    for n in 0..10 {
        assert_eq!(beta(n, 0, 0, 0, 0).unwrap(), int(1));
    }
    assert!(beta(3, 2, 2, 0, 0).is_err());
    assert!(beta(3, 1, 1, 1, 2).is_err());
}

#[test]
fn terwilliger_basis_structure() {
    for n in 1..=5u32 {
        let basis = terwilliger_basis(n).unwrap();
        assert_eq!(BigInt::from(basis.len()), binom(n as i64 + 3, 3));
        assert!(basis.iter().all(|(_, m)| m.nnz() > 0));
        let dim = 1usize << n;
        for x in 0..dim {
            for y in 0..dim {
                assert_eq!(basis.iter().map(|(_, m)| m.get(x, y)).sum::<u8>(), 1);
            }
        }
        let lookup: std::collections::HashMap<_, _> = basis.iter().map(|(k, m)| (*k, m)).collect();
        for ((i, j, t), m) in &basis {
            assert_eq!(&m.transpose(), lookup[&(*j, *i, *t)]);
        }
        let (key, e00) = &basis[0];
        assert_eq!(*key, (0, 0, 0));
        assert_eq!(e00.nnz(), 1);
        assert_eq!(e00.get(0, 0), 1);
    }
    assert!(terwilliger_basis(9).is_err());
}

fn explicit_matrix(n: u32, coeffs: &[f64]) -> Mat {
    let idx = TerwilligerIndex::new(n);
    let dim = 1usize << n;
    let mut m = Mat::zeros(dim);
    for x in 0..dim {
        for y in 0..dim {
            m[(x, y)] = coeffs[idx.pattern_of(x, y)];
        }
    }
    m
}

fn symmetric_coeffs(rng: &mut ChaCha8Rng, idx: &TerwilligerIndex) -> Vec<f64> {
    let mut c = vec![0.0; idx.len()];
    for (p, &(i, j, t)) in idx.triples().iter().enumerate() {
        if i <= j {
            let v = rng.gen_range(-1.0..1.0);
            c[p] = v;
            c[idx.index_of(j, i, t).unwrap()] = v;
        }
    }
    c
}

#[test]
fn phi_of_unit_is_identity() {
    for n in 1..=8 {
        let img = phi(n, &TerwilligerIndex::new(n).unit()).unwrap();
        for b in &img.blocks {
            let s = b.labels.len();
            assert_eq!(s as u32, n - 2 * b.k + 1);
            for r in 0..s {
                for c in 0..s {
                    let expect = if r == c { 1.0 } else { 0.0 };
                    assert!((b.float[(r, c)] - expect).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn phi_of_corner_element() {
    let idx = TerwilligerIndex::new(2);
    let mut c = vec![BigRational::zero(); idx.len()];
    c[idx.index_of(0, 0, 0).unwrap()] = BigRational::one();
    let img = phi(2, &c).unwrap();
    assert_eq!(img.block_sizes(), vec![3, 1]);
    let b0 = &img.blocks[0].float;
    for r in 0..3 {
        for s in 0..3 {
            assert_eq!(b0[(r, s)], if (r, s) == (0, 0) { 1.0 } else { 0.0 });
        }
    }
    assert_eq!(img.blocks[1].float[(0, 0)], 0.0);
    assert!(phi(2, &c[1..]).is_err());
}

fn block_spectrum(n: u32, blocks: &[Mat]) -> Vec<f64> {
    let mut out = Vec::new();
    for (k, b) in blocks.iter().enumerate() {
        let mult = binom(n as i64, k as i64) - binom(n as i64, k as i64 - 1);
        let mult: usize = mult.try_into().unwrap();
        for v in jacobi_eigen(b, false).values {
            out.extend(std::iter::repeat(v).take(mult));
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

#[test]
fn phi_preserves_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 1..=5 {
        let table = BetaTable::new(n);
        for _ in 0..5 {
            let c = symmetric_coeffs(&mut rng, table.index());
            let full = jacobi_eigen(&explicit_matrix(n, &c), false).values;
            let blocks = block_spectrum(n, &phi_f64(&table, &c).unwrap());
            assert_eq!(full.len(), blocks.len());
            for (a, b) in full.iter().zip(&blocks) {
                assert!((a - b).abs() < 1e-9, "n={n}: {a} vs {b}");
            }
        }
    }
}

/// Averaging a Gram matrix over each pattern class projects it onto the
/// algebra and keeps it PSD; its φ blocks must be PSD too, and a
/// non-PSD element must have a non-PSD block.
#[test]
fn phi_transports_psd() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=5 {
        let table = BetaTable::new(n);
        let idx = table.index();
        let dim = 1usize << n;
        for _ in 0..4 {
            let g: Vec<Vec<f64>> = (0..3).map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
            let mut sums = vec![0.0; idx.len()];
            let mut counts = vec![0usize; idx.len()];
            for x in 0..dim {
                for y in 0..dim {
                    let p = idx.pattern_of(x, y);
                    sums[p] += g.iter().map(|row| row[x] * row[y]).sum::<f64>();
                    counts[p] += 1;
                }
            }
            let c: Vec<f64> = sums.iter().zip(&counts).map(|(s, k)| s / *k as f64).collect();
            assert!(jacobi_eigen(&explicit_matrix(n, &c), false).values[0] >= -1e-9);
            for b in phi_f64(&table, &c).unwrap() {
                assert!(jacobi_eigen(&b, false).values[0] >= -1e-9);
            }
            let mut shifted = c.clone();
            for (p, &(i, j, t)) in idx.triples().iter().enumerate() {
                if i == j && t == i {
                    shifted[p] -= 100.0;
                }
            }
            let min_block = phi_f64(&table, &shifted)
                .unwrap()
                .iter()
                .map(|b| jacobi_eigen(b, false).values[0])
                .fold(f64::INFINITY, f64::min);
            assert!(min_block < 0.0);
        }
    }
}

#[test]
fn float_rendering_matches_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 1..=7 {
        let table = BetaTable::new(n);
        let exact: Vec<BigRational> = (0..table.index().len())
            .map(|_| BigRational::new(int(rng.gen_range(-9..=9)), int(rng.gen_range(1..=5))))
            .collect();
        let floats: Vec<f64> = exact.iter().map(|q| num_traits::ToPrimitive::to_f64(q).unwrap()).collect();
        let img = phi(n, &exact).unwrap();
        for (b, f) in img.blocks.iter().zip(phi_f64(&table, &floats).unwrap()) {
            let scale = 1.0 + b.float.max_abs();
            for r in 0..f.dim() {
                for c in 0..f.dim() {
                    assert!((b.float[(r, c)] - f[(r, c)]).abs() <= 1e-12 * scale);
                }
            }
        }
    }
}

#[test]
fn homomorphism_check_passes() {
    for n in 1..=5 {
        let r = phi_homomorphism_check(n, if n == 4 { 100 } else { 20 }, 17).unwrap();
        assert!(r.unit_checked);
        assert_eq!(r.products_checked, r.transposes_checked);
    }
    assert!(phi_homomorphism_check(6, 1, 0).is_err());
}

#[test]
fn beta_csv_lists_block_entries() {
    let csv = beta_csv(4);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,i,j,t,k,value"));
    assert!(csv.contains("\n4,0,0,0,0,1\n"));
    let rows = lines.count();
    let expected: usize = (0..=2u32)
        .map(|k| TerwilligerIndex::new(4).triples().iter().filter(|&&(i, j, _)| i >= k && j >= k && i <= 4 - k && j <= 4 - k).count())
        .sum();
    assert_eq!(rows, expected);
}
