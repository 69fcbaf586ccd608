// SPDX-License-Identifier: Apache-2.0

use crate::algebra::TerwilligerIndex;
use crate::error::{Error, Result};
use crate::hamming::TripleOrbit;
use std::collections::BTreeMap;

/// Value of one orbit variable in a program: a fixed constant or a free unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitValue {
    Zero,
    One,
    Var(usize),
}

/// Orbit variables `x_ω` for the three-point program on `(n, d)`.
///
/// Every weight pattern `(i, j, t)` maps to the orbit of `{0, x, y}` with
/// `wt x = i`, `wt y = j`, `|x ∧ y| = t`. The orbit `(0,0,0)` is the constant
/// 1 and orbits with a distance in `1..d` are the constant 0.
#[derive(Clone, Debug)]
pub struct TripleVariableSet {
    n: u32,
    d: u32,
    index: TerwilligerIndex,
    orbits: Vec<TripleOrbit>,
    orbit_of: Vec<usize>,
    values: Vec<OrbitValue>,
    num_vars: usize,
    lookup: BTreeMap<TripleOrbit, usize>,
}

impl TripleVariableSet {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        if n == 0 || d == 0 || d > n {
            return Err(Error::OutOfRange(format!("need 1 ≤ d ≤ n, got n = {n}, d = {d}")));
        }
        let index = TerwilligerIndex::new(n);
        let mut lookup = BTreeMap::new();
        for &(i, j, t) in index.triples() {
            lookup.insert(TripleOrbit::from_weights(i, j, t, n)?, 0);
        }
        let orbits: Vec<TripleOrbit> = lookup.keys().copied().collect();
        for (k, o) in orbits.iter().enumerate() {
            lookup.insert(*o, k);
        }
        let orbit_of = index
            .triples()
            .iter()
            .map(|&(i, j, t)| lookup[&TripleOrbit::from_weights(i, j, t, n).expect("validated above")])
            .collect();
        let mut num_vars = 0;
        let values = orbits
            .iter()
            .map(|o| {
                let ds = o.distances();
                if ds == [0, 0, 0] {
                    OrbitValue::One
                } else if ds.iter().any(|&x| x >= 1 && x < d) {
                    OrbitValue::Zero
                } else {
                    num_vars += 1;
                    OrbitValue::Var(num_vars - 1)
                }
            })
            .collect();
        Ok(TripleVariableSet { n, d, index, orbits, orbit_of, values, num_vars, lookup })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn index(&self) -> &TerwilligerIndex {
        &self.index
    }

    /// All realizable orbits in increasing order.
    pub fn orbits(&self) -> &[TripleOrbit] {
        &self.orbits
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn position(&self, o: &TripleOrbit) -> Option<usize> {
        self.lookup.get(o).copied()
    }

    /// Orbit position of the weight pattern `(i, j, t)`.
    pub fn orbit_of(&self, i: u32, j: u32, t: u32) -> Option<usize> {
        self.index.index_of(i, j, t).map(|p| self.orbit_of[p])
    }

    pub fn value(&self, orbit: usize) -> OrbitValue {
        self.values[orbit]
    }

    /// `p_j = x_{(0,j,j)}`.
    pub fn pair(&self, j: u32) -> OrbitValue {
        if j == 0 {
            return OrbitValue::One;
        }
        let o = TripleOrbit::new(0, j, j, self.n).expect("pair orbits are realizable");
        self.values[self.lookup[&o]]
    }

    /// Orbit of each variable, in variable order.
    pub fn variable_orbits(&self) -> Vec<TripleOrbit> {
        self.orbits.iter().zip(&self.values).filter(|(_, v)| matches!(v, OrbitValue::Var(_))).map(|(o, _)| *o).collect()
    }
}
