// SPDX-License-Identifier: Apache-2.0

//! Exact maximum independent set by bitset branch and bound.
//!
//! Searches for a maximum clique of the complement graph. Each node colors
//! the candidate set greedily in the complement (every color class is a
//! clique of the original graph, so it holds at most one vertex of an
//! independent set) and branches on vertices in reverse color order,
//! pruning when the current set plus the color count cannot beat the
//! incumbent.

use super::Graph;
use crate::error::{Error, Result};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Largest vertex count accepted by [`independence_number`].
pub const MAX_MIS_VERTICES: usize = 1 << 14;

/// A maximum independent set and its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentSet {
    pub size: usize,
    /// sorted vertex indices
    pub witness: Vec<usize>,
}

struct Search {
    words: usize,
    /// complement adjacency in search order
    hadj: Vec<u64>,
    /// original vertex of each search index
    label: Vec<usize>,
}

fn first_bit(set: &[u64]) -> Option<usize> {
    set.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn clear(set: &mut [u64], v: usize) {
    set[v / 64] &= !(1u64 << (v % 64));
}

fn set(set: &mut [u64], v: usize) {
    set[v / 64] |= 1u64 << (v % 64);
}

fn disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}

fn is_empty(set: &[u64]) -> bool {
    set.iter().all(|w| *w == 0)
}

impl Search {
    fn new(g: &Graph) -> Self {
        let n = g.num_vertices();
        let words = n.div_ceil(64);
        // Low original degree first: such vertices have many complement
        // neighbors and are colored early.
        let mut label: Vec<usize> = (0..n).collect();
        label.sort_by_key(|&v| (g.degree(v), v));
        let mut hadj = vec![0u64; n * words];
        for (a, &u) in label.iter().enumerate() {
            let row = &mut hadj[a * words..(a + 1) * words];
            for (b, &v) in label.iter().enumerate() {
                if a != b && !g.has_edge(u, v) {
                    row[b / 64] |= 1 << (b % 64);
                }
            }
        }
        Search { words, hadj, label }
    }

    fn hrow(&self, v: usize) -> &[u64] {
        &self.hadj[v * self.words..(v + 1) * self.words]
    }

    /// Greedy first-fit coloring of `p` in the complement graph, returning
    /// vertices in color order with their colors (1-based, nondecreasing).
    /// A vertex that would open a class above `kmin` is moved into a lower
    /// class when its single conflict there can be moved to another class
    /// at most `kmin`; colors up to `kmin` are pruned by the caller anyway.
    fn color(&self, p: &[u64], kmin: usize, order: &mut Vec<usize>, colors: &mut Vec<usize>) {
        order.clear();
        colors.clear();
        let mut classes: Vec<Vec<u64>> = Vec::new();
        let mut q = p.to_vec();
        while let Some(v) = first_bit(&q) {
            clear(&mut q, v);
            let hv = self.hrow(v);
            match classes.iter().position(|c| disjoint(c, hv)) {
                Some(c) => set(&mut classes[c], v),
                None => {
                    if classes.len() >= kmin && self.renumber(&mut classes, v, kmin) {
                        continue;
                    }
                    let mut c = vec![0u64; self.words];
                    set(&mut c, v);
                    classes.push(c);
                }
            }
        }
        for (k, c) in classes.iter().enumerate() {
            for v in bits(c) {
                order.push(v);
                colors.push(k + 1);
            }
        }
    }

    fn renumber(&self, classes: &mut [Vec<u64>], v: usize, kmin: usize) -> bool {
        let hv = self.hrow(v);
        let limit = kmin.min(classes.len());
        for k1 in 0..limit {
            let mut conflict = None;
            let mut count = 0;
            for (i, (c, h)) in classes[k1].iter().zip(hv).enumerate() {
                let x = c & h;
                if x != 0 {
                    count += x.count_ones();
                    conflict = Some(i * 64 + x.trailing_zeros() as usize);
                    if count > 1 {
                        break;
                    }
                }
            }
            if count != 1 {
                continue;
            }
            let w = conflict.expect("one conflict");
            let hw = self.hrow(w);
            for k2 in k1 + 1..limit {
                if disjoint(&classes[k2], hw) {
                    clear(&mut classes[k1], w);
                    set(&mut classes[k2], w);
                    set(&mut classes[k1], v);
                    return true;
                }
            }
        }
        false
    }

    fn expand(&self, current: &mut Vec<usize>, mut p: Vec<u64>, best: &Incumbent) {
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let kmin = best.size().saturating_sub(current.len());
        self.color(&p, kmin, &mut order, &mut colors);
        let mut child = vec![0u64; self.words];
        for idx in (0..order.len()).rev() {
            if current.len() + colors[idx] <= best.size() {
                return;
            }
            let v = order[idx];
            current.push(v);
            for ((c, pw), hw) in child.iter_mut().zip(&p).zip(self.hrow(v)) {
                *c = pw & hw;
            }
            if is_empty(&child) {
                best.offer(current, &self.label);
            } else {
                self.expand(current, child.clone(), best);
            }
            current.pop();
            clear(&mut p, v);
        }
    }

    fn expand_parallel(&self, full: Vec<u64>, best: &Incumbent, threads: usize) {
        let mut order = Vec::new();
        let mut colors = Vec::new();
        self.color(&full, best.size(), &mut order, &mut colors);
        // Branch idx explores order[idx] with candidates order[..idx] ∩ N̄(v).
        let mut prefix = vec![0u64; self.words];
        let mut tasks = Vec::with_capacity(order.len());
        for (idx, &v) in order.iter().enumerate() {
            let p: Vec<u64> = prefix.iter().zip(self.hrow(v)).map(|(a, b)| a & b).collect();
            tasks.push((v, colors[idx], p));
            set(&mut prefix, v);
        }
        let next = AtomicUsize::new(tasks.len());
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let idx = match next.fetch_sub(1, Ordering::AcqRel).checked_sub(1) {
                        Some(i) if i < tasks.len() => i,
                        _ => break,
                    };
                    let (v, color, p) = &tasks[idx];
                    if *color <= best.size() {
                        continue;
                    }
                    let mut current = vec![*v];
                    if is_empty(p) {
                        best.offer(&current, &self.label);
                    } else {
                        self.expand(&mut current, p.clone(), best);
                    }
                });
            }
        });
    }

    fn full_set(&self) -> Vec<u64> {
        let n = self.label.len();
        let mut p = vec![u64::MAX; self.words];
        if n % 64 != 0 {
            p[self.words - 1] = (1u64 << (n % 64)) - 1;
        }
        if n == 0 {
            p.clear();
            p.resize(self.words, 0);
        }
        p
    }
}

/// Shared monotone incumbent.
struct Incumbent {
    size: AtomicUsize,
    witness: Mutex<Vec<usize>>,
}

impl Incumbent {
    fn size(&self) -> usize {
        self.size.load(Ordering::Acquire)
    }

    fn offer(&self, set: &[usize], label: &[usize]) {
        let mut w = self.witness.lock().expect("incumbent lock");
        if set.len() > self.size.load(Ordering::Acquire) {
            *w = set.iter().map(|&v| label[v]).collect();
            self.size.store(set.len(), Ordering::Release);
        }
    }
}

/// Independent set from repeatedly taking a vertex of least remaining degree.
fn greedy_lower_bound(g: &Graph) -> Vec<usize> {
    let n = g.num_vertices();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut out = Vec::new();
    while let Some(v) = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (deg[v], v)) {
        out.push(v);
        alive[v] = false;
        let nbrs: Vec<usize> = g.neighbors(v).filter(|&u| alive[u]).collect();
        for u in nbrs {
            alive[u] = false;
            for w in g.neighbors(u) {
                deg[w] = deg[w].saturating_sub(1);
            }
        }
    }
    out
}

fn check_cap(g: &Graph) -> Result<()> {
    if g.num_vertices() > MAX_MIS_VERTICES {
        return Err(Error::CapExceeded { what: "independence number vertex count", size: g.num_vertices(), cap: MAX_MIS_VERTICES });
    }
    Ok(())
}

/// An independent set larger than `lower` if one exists, else empty.
fn search_above(g: &Graph, lower: usize, threads: usize) -> Vec<usize> {
    let best = Incumbent { size: AtomicUsize::new(lower), witness: Mutex::new(Vec::new()) };
    if g.num_vertices() > lower {
        let search = Search::new(g);
        let full = search.full_set();
        if threads <= 1 {
            search.expand(&mut Vec::new(), full, &best);
        } else {
            search.expand_parallel(full, &best, threads);
        }
    }
    best.witness.into_inner().expect("incumbent lock")
}

/// Exact independence number with a maximum independent set. Deterministic.
pub fn independence_number(g: &Graph) -> Result<IndependentSet> {
    independence_number_par(g, 1)
}

/// [`independence_number`] with root branches split across `threads`
/// workers sharing the incumbent. The size is exact for any thread count;
/// with more than one thread the witness may vary between runs.
///
/// Graphs built by [`build_gnd`](super::build_gnd) are searched modulo
/// their symmetry: a code may be translated to contain 0, and permuted so
/// that its lightest other word and then its next word (ordered by weight
/// and overlap with the first) are fixed representatives.
pub fn independence_number_par(g: &Graph, threads: usize) -> Result<IndependentSet> {
    check_cap(g)?;
    let mut witness = match g.hamming_parameters() {
        Some((n, d)) => gnd_search(g, n, d, threads),
        None => {
            let initial = greedy_lower_bound(g);
            let found = search_above(g, initial.len(), threads);
            if found.len() > initial.len() {
                found
            } else {
                initial
            }
        }
    };
    witness.sort_unstable();
    Ok(IndependentSet { size: witness.len(), witness })
}

fn gnd_search(g: &Graph, n: u32, d: u32, threads: usize) -> Vec<usize> {
    let size = 1usize << n;
    let dist = |a: usize, b: usize| (a ^ b).count_ones();
    let mut best: Vec<usize> = greedy_lower_bound(g);
    for k in d..=n {
        let wk = (1usize << k) - 1;
        if best.len() < 2 {
            best = vec![0, wk];
        }
        let inside = |v: usize| (v & wk).count_ones();
        // candidates given 0 and w_k: weight ≥ k and far from w_k
        let pool: Vec<usize> = (1..size).filter(|&v| v != wk && v.count_ones() >= k && dist(v, wk) >= d).collect();
        if 2 + pool.len() <= best.len() {
            continue;
        }
        for wt in k..=n {
            for a in 0..=wt.min(k) {
                let b = wt - a;
                if b > n - k {
                    continue;
                }
                let rep = ((1usize << a) - 1) | (((1usize << b) - 1) << k);
                if rep == wk || dist(rep, wk) < d {
                    continue;
                }
                let key = (wt, a);
                let rest: Vec<usize> = pool
                    .iter()
                    .copied()
                    .filter(|&v| v != rep && (v.count_ones(), inside(v)) >= key && dist(v, rep) >= d)
                    .collect();
                if 3 + rest.len() <= best.len() {
                    continue;
                }
                if best.len() < 3 {
                    best = vec![0, wk, rep];
                }
                let found = search_above(&g.induced(&rest), best.len() - 3, threads);
                if !found.is_empty() {
                    best = vec![0, wk, rep];
                    best.extend(found.into_iter().map(|i| rest[i]));
                }
            }
        }
    }
    best
}
