// SPDX-License-Identifier: Apache-2.0

use crate::config::Format;
use codebound::audit::AuditReport;
use codebound::bounds::{CacheRecord, Method, CACHE_HEADER};
use codebound::hamming::Word;
use serde_json::json;
use std::fmt::Write;

pub fn records(format: Format, rows: &[CacheRecord]) -> String {
    let mut out = String::new();
    match format {
        Format::Table => {
            writeln!(out, "{:<24} {:>3} {:>3} {:>20} {:>14} {:>10}", "method", "n", "d", "value", "bound", "gap").unwrap();
            for r in rows {
                writeln!(
                    out,
                    "{:<24} {:>3} {:>3} {:>20.9} {:>14} {:>10.2e}",
                    r.method.to_string(),
                    r.n,
                    r.d,
                    r.value,
                    r.integer_bound,
                    r.gap
                )
                .unwrap();
            }
        }
        Format::Csv => {
            out.push_str(CACHE_HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&r.to_csv());
                out.push('\n');
            }
        }
        Format::JsonLines => {
            for r in rows {
                out.push_str(&serde_json::to_string(r).expect("records serialize"));
                out.push('\n');
            }
        }
    }
    out
}

pub fn alpha(format: Format, n: u32, d: u32, size: usize, witness: &[usize]) -> String {
    let words: Vec<String> =
        witness.iter().map(|&v| Word::new(n, v as u32).expect("vertex of G(n,d)").to_bitstring()).collect();
    match format {
        Format::Table => format!("alpha(G({n},{d})) = {size}\nwitness: {}\n", words.join(" ")),
        Format::Csv => format!("n,d,alpha,witness\n{n},{d},{size},{}\n", words.join(" ")),
        Format::JsonLines => format!("{}\n", json!({ "n": n, "d": d, "alpha": size, "witness": words })),
    }
}

pub fn audit(format: Format, report: &AuditReport) -> String {
    let mut out = String::new();
    let failed = report.failures().count();
    let total = report.checks.len();
    match format {
        Format::Table => {
            for c in &report.checks {
                let residual = c.residual.map_or(String::new(), |r| format!(" residual {r:.3e}"));
                writeln!(out, "{} {} {}{residual} ({})", if c.passed { "PASS" } else { "FAIL" }, c.suite, c.name, c.detail)
                    .unwrap();
            }
            writeln!(out, "{} of {total} checks passed", total - failed).unwrap();
        }
        Format::Csv => {
            out.push_str("suite,name,passed,residual,detail\n");
            for c in &report.checks {
                let residual = c.residual.map_or(String::new(), |r| format!("{r:e}"));
                writeln!(out, "{},{},{},{residual},{}", c.suite, c.name, c.passed, c.detail.replace(',', ";")).unwrap();
            }
        }
        Format::JsonLines => {
            for c in &report.checks {
                writeln!(out, "{}", serde_json::to_string(c).expect("checks serialize")).unwrap();
            }
            writeln!(out, "{}", json!({ "summary": { "total": total, "passed": total - failed, "failed": failed } }))
                .unwrap();
        }
    }
    out
}

/// Cell of an (n × d) grid.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Bound(CacheRecord),
    /// d > n
    Empty,
    /// over a size cap
    Capped,
    Failed(String),
}

pub fn grid(format: Format, methods: &[Method], ns: &[u32], ds: &[u32], cells: &[Cell]) -> String {
    let at = |m: usize, i: usize, j: usize| &cells[(m * ns.len() + i) * ds.len() + j];
    let mut out = String::new();
    match format {
        Format::Table => {
            for (m, method) in methods.iter().enumerate() {
                if m > 0 {
                    out.push('\n');
                }
                writeln!(out, "{method}").unwrap();
                write!(out, "{:>4}", "n\\d").unwrap();
                for d in ds {
                    write!(out, " {d:>10}").unwrap();
                }
                out.push('\n');
                for (i, n) in ns.iter().enumerate() {
                    write!(out, "{n:>4}").unwrap();
                    for j in 0..ds.len() {
                        let text = match at(m, i, j) {
                            Cell::Bound(r) => r.integer_bound.to_string(),
                            Cell::Empty | Cell::Capped => "—".to_string(),
                            Cell::Failed(_) => "fail".to_string(),
                        };
                        write!(out, " {text:>10}").unwrap();
                    }
                    out.push('\n');
                }
            }
        }
        Format::Csv | Format::JsonLines => {
            let rows: Vec<CacheRecord> = cells
                .iter()
                .filter_map(|c| match c {
                    Cell::Bound(r) => Some(r.clone()),
                    _ => None,
                })
                .collect();
            out = records(format, &rows);
        }
    }
    out
}
