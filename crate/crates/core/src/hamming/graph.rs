// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use std::fmt::Write as _;

/// Largest n for which G(n, d) is built explicitly.
pub const MAX_GND_LENGTH: u32 = 16;

/// Finite simple graph on vertices `0..N` with adjacency rows as bitsets.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    /// (n, d) when this is G(n, d) as built by [`build_gnd`]
    gnd: Option<(u32, u32)>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph {{ vertices: {}, edges: {} }}", self.n, self.num_edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph { n, words, adj: vec![0; n * words], gnd: None }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::OutOfRange(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    /// Outer 5-cycle 0..5, inner pentagram 5..10, spokes i to i+5.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::from_edges(10, &edges).expect("valid edges")
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Number of u64 words per adjacency row.
    pub fn row_words(&self) -> usize {
        self.words
    }

    fn set(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::OutOfRange(format!("edge ({u}, {v}) on {} vertices", self.n)));
        }
        if u == v {
            return Err(Error::InvalidProblem(format!("loop at vertex {u}")));
        }
        self.set(u, v);
        self.gnd = None;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adjacency row of `u` as a bitset.
    pub fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_edge(u, v))
    }

    pub fn num_edges(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// `Some((n, d))` when the graph is G(n, d) from [`build_gnd`].
    pub fn hamming_parameters(&self) -> Option<(u32, u32)> {
        self.gnd
    }

    /// Subgraph induced on `vertices` (renumbered in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.set(a, b);
                }
            }
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set(u, v);
                }
            }
        }
        g
    }

    /// `true` when no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| u < self.n && set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }
}

/// G(n, d): vertices F₂ⁿ (vertex index = word bits), edges between words at
/// distance 1..d−1. Independent sets are exactly codes of minimum distance ≥ d.
pub fn build_gnd(n: u32, d: u32) -> Result<Graph> {
    if n == 0 || n > MAX_GND_LENGTH {
        return Err(Error::CapExceeded { what: "G(n,d) word length", size: n as usize, cap: MAX_GND_LENGTH as usize });
    }
    if d == 0 || d > n {
        return Err(Error::OutOfRange(format!("need 1 ≤ d ≤ n, got n = {n}, d = {d}")));
    }
    let size = 1usize << n;
    let ball: Vec<usize> = (1..size).filter(|m| (m.count_ones()) < d).collect();
    let mut g = Graph::empty(size);
    for u in 0..size {
        let row = &mut g.adj[u * g.words..(u + 1) * g.words];
        for &m in &ball {
            let v = u ^ m;
            row[v / 64] |= 1 << (v % 64);
        }
    }
    g.gnd = Some((n, d));
    Ok(g)
}

/// Parses the edge-list format: first non-comment line is the vertex count
/// N, each further line is `u v` with 0-based indices. `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| -> Result<usize> {
            s.parse::<usize>().map_err(|_| Error::Parse { line: line_no, msg: format!("expected a vertex index, got {s:?}") })
        };
        match graph.as_mut() {
            None => {
                if fields.len() != 1 {
                    return Err(Error::Parse { line: line_no, msg: "expected the vertex count N".into() });
                }
                graph = Some(Graph::empty(parse(fields[0])?));
            }
            Some(g) => {
                if fields.len() != 2 {
                    return Err(Error::Parse { line: line_no, msg: "expected an edge `u v`".into() });
                }
                let (u, v) = (parse(fields[0])?, parse(fields[1])?);
                g.add_edge(u, v).map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?;
            }
        }
    }
    graph.ok_or(Error::Parse { line: 0, msg: "missing vertex count".into() })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n);
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
