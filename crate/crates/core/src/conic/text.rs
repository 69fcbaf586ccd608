// SPDX-License-Identifier: Apache-2.0

//! Line-oriented `CONIC v1` text format.
//!
//! ```text
//! CONIC v1
//! orthant 2
//! psd 3 1
//! constraints 2
//! offset 0
//! C 1 0 1 0.5        objective entry: block k, row i, column j (i ≤ j), value
//! b 0 1              rhs of constraint 0
//! A 0 0 1 1 1        entry of constraint 0: block k, i, j, value
//! ```
//!
//! Block `0` is the orthant (with `i = j` = coordinate); block `k ≥ 1` is the
//! `k`-th PSD block. All indices are 0-based. Off-diagonal PSD entries are
//! written once and stand for both `(i, j)` and `(j, i)`. Lines starting with
//! `#` are comments. Values are printed in Rust's shortest round-trip form, so
//! a write/read cycle reproduces the problem bit for bit.

use super::{BlockSymMatrix, ConeSpec, ConicProblem, Constraint, SparseBlockSym};
use crate::error::{Error, Result};
use std::fmt::Write as _;

pub const HEADER: &str = "CONIC v1";

pub fn write_conic(p: &ConicProblem) -> String {
    let mut out = String::new();
    let cone = p.cone();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "orthant {}", cone.orthant_dim()).unwrap();
    write!(out, "psd").unwrap();
    for s in cone.psd_block_sizes() {
        write!(out, " {s}").unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "constraints {}", p.num_constraints()).unwrap();
    writeln!(out, "offset {:?}", p.offset()).unwrap();
    let c = SparseBlockSym::from_dense(p.objective());
    write_entries(&mut out, "C", &c);
    for (j, con) in p.constraints().iter().enumerate() {
        writeln!(out, "b {j} {:?}", con.b).unwrap();
        write_entries(&mut out, &format!("A {j}"), &con.a);
    }
    out
}

fn write_entries(out: &mut String, prefix: &str, a: &SparseBlockSym) {
    for &(r, v) in &a.orthant {
        writeln!(out, "{prefix} 0 {r} {r} {v:?}").unwrap();
    }
    for (k, blk) in a.blocks.iter().enumerate() {
        for &(i, j, v) in blk {
            writeln!(out, "{prefix} {} {i} {j} {v:?}", k + 1).unwrap();
        }
    }
}

struct Cursor<'a> {
    line_no: usize,
    tokens: std::str::SplitWhitespace<'a>,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line_no, msg: msg.into() }
    }

    fn usize(&mut self, what: &str) -> Result<usize> {
        let tok = self.tokens.next().ok_or_else(|| self.err(format!("missing {what}")))?;
        tok.parse().map_err(|_| self.err(format!("bad {what}: {tok:?}")))
    }

    fn f64(&mut self, what: &str) -> Result<f64> {
        let tok = self.tokens.next().ok_or_else(|| self.err(format!("missing {what}")))?;
        let v: f64 = tok.parse().map_err(|_| self.err(format!("bad {what}: {tok:?}")))?;
        if !v.is_finite() {
            return Err(self.err(format!("non-finite {what}")));
        }
        Ok(v)
    }

    fn finish(&mut self) -> Result<()> {
        match self.tokens.next() {
            Some(t) => Err(self.err(format!("trailing token {t:?}"))),
            None => Ok(()),
        }
    }
}

pub fn read_conic(text: &str) -> Result<ConicProblem> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, first) = lines.next().ok_or(Error::Parse { line: 0, msg: "empty input".into() })?;
    if first != HEADER {
        return Err(Error::Parse { line: ln, msg: format!("expected {HEADER:?}") });
    }

    let mut orthant: Option<usize> = None;
    let mut psd: Option<Vec<usize>> = None;
    let mut m: Option<usize> = None;
    let mut offset = 0.0;
    let mut objective_entries = Vec::new();
    let mut rhs: Vec<(usize, f64)> = Vec::new();
    let mut entries: Vec<(usize, usize, usize, usize, usize, f64)> = Vec::new();

    for (line_no, line) in lines {
        let mut toks = line.split_whitespace();
        let kw = toks.next().unwrap_or_default();
        let mut cur = Cursor { line_no, tokens: toks };
        match kw {
            "orthant" => {
                orthant = Some(cur.usize("orthant dimension")?);
                cur.finish()?;
            }
            "psd" => {
                let mut sizes = Vec::new();
                for tok in cur.tokens.by_ref() {
                    sizes.push(tok.parse().map_err(|_| Error::Parse { line: line_no, msg: format!("bad block size {tok:?}") })?);
                }
                psd = Some(sizes);
            }
            "constraints" => {
                m = Some(cur.usize("constraint count")?);
                cur.finish()?;
            }
            "offset" => {
                offset = cur.f64("offset")?;
                cur.finish()?;
            }
            "C" => {
                let (k, i, j) = (cur.usize("block")?, cur.usize("row")?, cur.usize("column")?);
                let v = cur.f64("value")?;
                cur.finish()?;
                objective_entries.push((line_no, k, i, j, v));
            }
            "b" => {
                let j = cur.usize("constraint index")?;
                let v = cur.f64("rhs")?;
                cur.finish()?;
                rhs.push((j, v));
            }
            "A" => {
                let con = cur.usize("constraint index")?;
                let (k, i, j) = (cur.usize("block")?, cur.usize("row")?, cur.usize("column")?);
                let v = cur.f64("value")?;
                cur.finish()?;
                entries.push((line_no, con, k, i, j, v));
            }
            other => return Err(cur.err(format!("unknown keyword {other:?}"))),
        }
    }

    let orthant = orthant.ok_or(Error::Parse { line: 0, msg: "missing orthant line".into() })?;
    let psd = psd.ok_or(Error::Parse { line: 0, msg: "missing psd line".into() })?;
    let m = m.ok_or(Error::Parse { line: 0, msg: "missing constraints line".into() })?;
    let cone = ConeSpec::new(orthant, psd)?;

    let place = |a: &mut SparseBlockSym, line: usize, k: usize, i: usize, j: usize, v: f64| -> Result<()> {
        if k == 0 {
            if i != j || i >= cone.orthant_dim() {
                return Err(Error::Parse { line, msg: format!("bad orthant coordinate ({i},{j})") });
            }
            a.add_orthant(i, v);
        } else {
            let s = *cone
                .psd_block_sizes()
                .get(k - 1)
                .ok_or(Error::Parse { line, msg: format!("block {k} does not exist") })?;
            if i >= s || j >= s {
                return Err(Error::Parse { line, msg: format!("entry ({i},{j}) outside block of size {s}") });
            }
            a.add_block(k - 1, i, j, v);
        }
        Ok(())
    };

    let mut c_sparse = SparseBlockSym::new(cone.num_blocks());
    let mut constraints: Vec<Constraint> =
        (0..m).map(|_| Constraint { a: SparseBlockSym::new(cone.num_blocks()), b: 0.0 }).collect();
    for &(line, k, i, j, v) in &objective_entries {
        place(&mut c_sparse, line, k, i, j, v)?;
    }
    for &(line, con, k, i, j, v) in &entries {
        if con >= m {
            return Err(Error::Parse { line, msg: format!("constraint index {con} out of range") });
        }
        place(&mut constraints[con].a, line, k, i, j, v)?;
    }
    for (j, v) in rhs {
        let c = constraints
            .get_mut(j)
            .ok_or(Error::Parse { line: 0, msg: format!("rhs index {j} out of range") })?;
        c.b = v;
    }
    c_sparse.canonicalize();
    let objective: BlockSymMatrix = c_sparse.to_dense(&cone);
    ConicProblem::with_offset(cone, objective, constraints, offset)
}
