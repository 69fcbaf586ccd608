// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::linalg::Mat;
use std::collections::{HashSet, VecDeque};

/// Default bound on the number of group elements enumerated.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

fn validate(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!("length {} on {n} points", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

/// All elements of the group generated by `generators` (permutations of
/// `0..n`), by breadth-first closure from the identity.
pub fn group_closure(n: usize, generators: &[Vec<usize>], cap: usize) -> Result<Vec<Vec<usize>>> {
    for g in generators {
        validate(g, n)?;
    }
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(h) = queue.pop_front() {
        for g in generators {
            let gh: Vec<usize> = h.iter().map(|&i| g[i]).collect();
            if !seen.contains(&gh) {
                if seen.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                seen.insert(gh.clone());
                queue.push_back(gh);
            }
        }
        order.push(h);
    }
    Ok(order)
}

/// Γ-average `(1/|Γ|) Σ_g gX` of a square matrix, where `g` acts by
/// simultaneous row/column permutation `(gX)_{g(i),g(j)} = X_{i,j}`.
pub fn gamma_average(x: &Mat, generators: &[Vec<usize>]) -> Result<Mat> {
    gamma_average_with_cap(x, generators, DEFAULT_GROUP_CAP)
}

pub fn gamma_average_with_cap(x: &Mat, generators: &[Vec<usize>], cap: usize) -> Result<Mat> {
    let n = x.dim();
    let group = group_closure(n, generators, cap)?;
    let mut acc = Mat::zeros(n);
    for g in &group {
        for i in 0..n {
            for j in 0..n {
                acc[(g[i], g[j])] += x[(i, j)];
            }
        }
    }
    acc.scale(1.0 / group.len() as f64);
    Ok(acc)
}
