// SPDX-License-Identifier: Apache-2.0

use super::result::{BoundParams, BoundResult, Method};
use crate::conic::SolveStatus;
use crate::error::{Error, Result};
use sha2::{Digest, Sha256};
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

pub const CACHE_HEADER: &str = "n,d,method,value,integer_bound,gap,params_hash,timestamp";

/// Hex digest (16 characters) of every setting that can change a bound.
pub fn params_hash(p: &BoundParams) -> String {
    let s = &p.solver;
    let text = format!(
        "gap_tol={:e};feas_tol={:e};max_iter={};step_fraction={:e};initial_scale={:e};round_margin={:e}",
        s.gap_tol, s.feas_tol, s.max_iter, s.step_fraction, s.initial_scale, p.round_margin
    );
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// One line of the results cache.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CacheRecord {
    pub n: u32,
    pub d: u32,
    pub method: Method,
    pub value: f64,
    pub integer_bound: u64,
    pub gap: f64,
    pub params_hash: String,
    /// seconds since the Unix epoch
    pub timestamp: u64,
}

impl CacheRecord {
    pub fn new(r: &BoundResult, params_hash: String) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        CacheRecord { n: r.n, d: r.d, method: r.method, value: r.value, integer_bound: r.integer_bound, gap: r.gap, params_hash, timestamp }
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n, self.d, self.method, self.value, self.integer_bound, self.gap, self.params_hash, self.timestamp
        )
    }

    pub fn from_csv(line: &str, line_no: usize) -> Result<Self> {
        let f: Vec<&str> = line.trim().split(',').collect();
        if f.len() != 8 {
            return Err(Error::Parse { line: line_no, msg: format!("expected 8 fields, got {}", f.len()) });
        }
        let bad = |what: &str| Error::Parse { line: line_no, msg: format!("bad {what}") };
        Ok(CacheRecord {
            n: f[0].parse().map_err(|_| bad("n"))?,
            d: f[1].parse().map_err(|_| bad("d"))?,
            method: f[2].parse().map_err(|_| bad("method"))?,
            value: f[3].parse().map_err(|_| bad("value"))?,
            integer_bound: f[4].parse().map_err(|_| bad("integer_bound"))?,
            gap: f[5].parse().map_err(|_| bad("gap"))?,
            params_hash: f[6].to_string(),
            timestamp: f[7].parse().map_err(|_| bad("timestamp"))?,
        })
    }

    /// The cached bound; only optimal results are cached, and the wall time
    /// is not stored.
    pub fn to_result(&self) -> BoundResult {
        BoundResult {
            n: self.n,
            d: self.d,
            method: self.method,
            value: self.value,
            integer_bound: self.integer_bound,
            gap: self.gap,
            status: SolveStatus::Optimal,
            wall_time: Duration::ZERO,
        }
    }
}

/// Append-only CSV file of computed bounds. Later lines win on equal keys.
#[derive(Clone, Debug)]
pub struct ResultsCache {
    path: PathBuf,
    records: Vec<CacheRecord>,
}

impl ResultsCache {
    /// Loads `path`; a missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let records = match std::fs::read_to_string(&path) {
            Ok(text) => parse_cache(&text)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(e.into()),
        };
        Ok(ResultsCache { path, records })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn records(&self) -> &[CacheRecord] {
        &self.records
    }

    pub fn lookup(&self, method: Method, n: u32, d: u32, hash: &str) -> Option<&CacheRecord> {
        self.records.iter().rev().find(|r| r.method == method && r.n == n && r.d == d && r.params_hash == hash)
    }

    /// Appends a record to memory and to the file, writing the header first
    /// if the file is new.
    pub fn append(&mut self, rec: CacheRecord) -> Result<()> {
        if let Some(dir) = self.path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let fresh = std::fs::metadata(&self.path).map_or(true, |m| m.len() == 0);
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut text = String::new();
        if fresh {
            text.push_str(CACHE_HEADER);
            text.push('\n');
        }
        text.push_str(&rec.to_csv());
        text.push('\n');
        f.write_all(text.as_bytes())?;
        self.records.push(rec);
        Ok(())
    }
}

pub fn parse_cache(text: &str) -> Result<Vec<CacheRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && l.trim() != CACHE_HEADER)
        .map(|(i, l)| CacheRecord::from_csv(l, i + 1))
        .collect()
}
