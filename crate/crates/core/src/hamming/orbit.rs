// SPDX-License-Identifier: Apache-2.0

use super::{hamming_distance, Word};
use crate::error::{Error, Result};
use std::fmt;

/// Orbit label of a set of at most three words under translations and
/// coordinate permutations: the sorted multiset of pairwise distances,
/// padded so that `{x} ↦ (0,0,0)` and `{x,y} ↦ (0,k,k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct TripleOrbit {
    d: [u32; 3],
}

impl TripleOrbit {
    /// Validates realizability in F₂ⁿ: sorted, even sum, triangle
    /// inequality, and sum at most 2n.
    pub fn new(d1: u32, d2: u32, d3: u32, n: u32) -> Result<Self> {
        let mut d = [d1, d2, d3];
        d.sort_unstable();
        let sum = d[0] + d[1] + d[2];
        if sum % 2 != 0 || d[2] > d[0] + d[1] || sum > 2 * n {
            return Err(Error::OutOfRange(format!("distances {d:?} are not realizable in length {n}")));
        }
        Ok(TripleOrbit { d })
    }

    /// Orbit of `{0, x, y}` with `wt x = i`, `wt y = j`, `|supp x ∩ supp y| = t`.
    pub fn from_weights(i: u32, j: u32, t: u32, n: u32) -> Result<Self> {
        if t > i || t > j || i + j > n + t {
            return Err(Error::OutOfRange(format!("({i},{j},{t}) is not a valid weight pattern for length {n}")));
        }
        TripleOrbit::new(i, j, i + j - 2 * t, n)
    }

    pub fn distances(&self) -> [u32; 3] {
        self.d
    }

    /// Orbits of sets with fewer than three distinct points.
    pub fn is_degenerate(&self) -> bool {
        self.d[0] == 0
    }
}

impl fmt::Display for TripleOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.d[0], self.d[1], self.d[2])
    }
}

/// Orbit label of the set `s` (one to three words; repeats are merged).
pub fn canonical_triple(n: u32, s: &[Word]) -> Result<TripleOrbit> {
    let mut pts: Vec<Word> = s.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.is_empty() || pts.len() > 3 {
        return Err(Error::OutOfRange(format!("canonical_triple needs 1 to 3 distinct words, got {}", pts.len())));
    }
    if pts.iter().any(|w| w.len() != n) {
        return Err(Error::ShapeMismatch(format!("words must have length {n}")));
    }
    match pts.len() {
        1 => TripleOrbit::new(0, 0, 0, n),
        2 => {
            let k = hamming_distance(&pts[0], &pts[1])?;
            TripleOrbit::new(0, k, k, n)
        }
        _ => TripleOrbit::new(
            hamming_distance(&pts[0], &pts[1])?,
            hamming_distance(&pts[0], &pts[2])?,
            hamming_distance(&pts[1], &pts[2])?,
            n,
        ),
    }
}
