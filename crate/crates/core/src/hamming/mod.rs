// SPDX-License-Identifier: Apache-2.0

//! The binary Hamming space F₂ⁿ, the distance graphs G(n, d), exact
//! independence numbers, codes, and orbit labels of small subsets.

mod graph;
mod mis;
mod orbit;

pub use graph::{build_gnd, parse_edge_list, write_edge_list, Graph, MAX_GND_LENGTH};
pub use mis::{independence_number, independence_number_par, IndependentSet, MAX_MIS_VERTICES};
pub use orbit::{canonical_triple, TripleOrbit};

use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Longest supported word length.
pub const MAX_WORD_LENGTH: u32 = 32;
/// Longest length accepted by [`greedy_code`].
pub const MAX_GREEDY_LENGTH: u32 = 20;

/// A word of F₂ⁿ stored as the low `n` bits of a `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    n: u32,
    bits: u32,
}

fn mask(n: u32) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl Word {
    pub fn new(n: u32, bits: u32) -> Result<Self> {
        if n == 0 || n > MAX_WORD_LENGTH {
            return Err(Error::OutOfRange(format!("word length {n} not in 1..={MAX_WORD_LENGTH}")));
        }
        if bits & !mask(n) != 0 {
            return Err(Error::OutOfRange(format!("bits {bits:#x} exceed length {n}")));
        }
        Ok(Word { n, bits })
    }

    pub fn zero(n: u32) -> Result<Self> {
        Word::new(n, 0)
    }

    pub fn ones(n: u32) -> Result<Self> {
        Word::new(n, mask(n.min(MAX_WORD_LENGTH)))
    }

    pub fn len(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Coordinatewise sum in F₂ⁿ.
    pub fn xor(&self, other: &Word) -> Result<Word> {
        check_same_length(self, other)?;
        Ok(Word { n: self.n, bits: self.bits ^ other.bits })
    }

    /// Bit string, coordinate 0 first.
    pub fn to_bitstring(&self) -> String {
        (0..self.n).map(|i| if self.bits >> i & 1 == 1 { '1' } else { '0' }).collect()
    }
}

fn check_same_length(x: &Word, y: &Word) -> Result<()> {
    if x.n != y.n {
        return Err(Error::ShapeMismatch(format!("word lengths {} and {}", x.n, y.n)));
    }
    Ok(())
}

pub fn weight(x: &Word) -> u32 {
    x.weight()
}

pub fn hamming_distance(x: &Word, y: &Word) -> Result<u32> {
    check_same_length(x, y)?;
    Ok((x.bits ^ y.bits).count_ones())
}

/// A binary code: a nonempty set of words of common length, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    n: u32,
    words: Vec<Word>,
}

impl Code {
    pub fn new(n: u32, words: Vec<Word>) -> Result<Self> {
        if n == 0 || n > MAX_WORD_LENGTH {
            return Err(Error::OutOfRange(format!("code length {n} not in 1..={MAX_WORD_LENGTH}")));
        }
        let mut set = BTreeSet::new();
        for w in &words {
            if w.n != n {
                return Err(Error::ShapeMismatch(format!("word of length {} in code of length {n}", w.n)));
            }
            if !set.insert(*w) {
                return Err(Error::InvalidProblem(format!("duplicate word {}", w.to_bitstring())));
            }
        }
        Ok(Code { n, words: set.into_iter().collect() })
    }

    pub fn from_bits(n: u32, bits: &[u32]) -> Result<Self> {
        let words = bits.iter().map(|&b| Word::new(n, b)).collect::<Result<Vec<_>>>()?;
        Code::new(n, words)
    }

    /// All of F₂ⁿ.
    pub fn whole_space(n: u32) -> Result<Self> {
        if n > MAX_GREEDY_LENGTH {
            return Err(Error::CapExceeded { what: "whole-space code length", size: n as usize, cap: MAX_GREEDY_LENGTH as usize });
        }
        Code::from_bits(n, &(0..1u32 << n).collect::<Vec<_>>())
    }

    pub fn length(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// Smallest distance between two distinct codewords; `None` for |C| ≤ 1.
    pub fn min_distance(&self) -> Option<u32> {
        let mut best: Option<u32> = None;
        for (i, a) in self.words.iter().enumerate() {
            for b in &self.words[i + 1..] {
                let d = (a.bits ^ b.bits).count_ones();
                best = Some(best.map_or(d, |m| m.min(d)));
            }
        }
        best
    }

    /// `true` when every pair of distinct codewords is at distance ≥ d.
    pub fn has_min_distance(&self, d: u32) -> bool {
        self.min_distance().map_or(true, |m| m >= d)
    }
}

/// Ordered pair counts `|{(u, v) ∈ C² : d(u, v) = r}|` for r = 0..=n.
pub fn distance_counts(c: &Code) -> Vec<u64> {
    let mut counts = vec![0u64; c.n as usize + 1];
    for a in &c.words {
        for b in &c.words {
            counts[(a.bits ^ b.bits).count_ones() as usize] += 1;
        }
    }
    counts
}

/// Distance distribution `A_r = distance_counts(c)[r] / |C|`.
pub fn distance_distribution(c: &Code) -> Result<Vec<f64>> {
    if c.is_empty() {
        return Err(Error::InvalidProblem("distance distribution of an empty code".into()));
    }
    let size = c.len() as f64;
    Ok(distance_counts(c).into_iter().map(|k| k as f64 / size).collect())
}

/// Lexicographic greedy code: scan F₂ⁿ in increasing order and keep every
/// word at distance ≥ d from all words kept so far.
pub fn greedy_code(n: u32, d: u32) -> Result<Code> {
    if n == 0 || n > MAX_GREEDY_LENGTH {
        return Err(Error::OutOfRange(format!("greedy_code needs 1 ≤ n ≤ {MAX_GREEDY_LENGTH}, got {n}")));
    }
    if d == 0 || d > n {
        return Err(Error::OutOfRange(format!("greedy_code needs 1 ≤ d ≤ n, got d = {d}")));
    }
    let size = 1usize << n;
    let ball: Vec<u32> = (0..size as u32).filter(|m| m.count_ones() < d).collect();
    let mut covered = vec![false; size];
    let mut words = Vec::new();
    for v in 0..size as u32 {
        if covered[v as usize] {
            continue;
        }
        words.push(Word { n, bits: v });
        for &m in &ball {
            covered[(v ^ m) as usize] = true;
        }
    }
    Ok(Code { n, words })
}

#[cfg(test)]
mod tests;
