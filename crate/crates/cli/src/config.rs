// SPDX-License-Identifier: Apache-2.0

use crate::Failure;
use codebound::bounds::BoundParams;
use serde::Deserialize;
use std::path::{Path, PathBuf};

pub const CACHE_ENV: &str = "CODEBOUND_CACHE";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Table,
    Csv,
    JsonLines,
}

/// Settings readable from a TOML file. Every field is optional; command-line
/// flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub gap_tol: Option<f64>,
    pub feas_tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub round_margin: Option<f64>,
    pub cache: Option<PathBuf>,
    pub format: Option<Format>,
    pub jobs: Option<usize>,
    pub strict: Option<bool>,
    pub verbose: Option<u8>,
    /// refuse programs with word length above this
    pub max_n: Option<u32>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::input(format!("bad config {}: {e}", path.display())))
    }
}

/// Overrides collected from flags.
#[derive(Debug, Default)]
pub struct FlagConfig {
    pub gap_tol: Option<f64>,
    pub feas_tol: Option<f64>,
    pub round_margin: Option<f64>,
    pub cache: Option<PathBuf>,
    pub no_cache: bool,
    pub format: Option<Format>,
    pub jobs: Option<usize>,
    pub strict: bool,
    pub verbose: u8,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub params: BoundParams,
    pub cache: Option<PathBuf>,
    pub format: Format,
    pub jobs: usize,
    pub strict: bool,
    pub verbose: u8,
    pub max_n: Option<u32>,
}

impl RunConfig {
    /// Cache path precedence: `--cache`, then the environment variable, then
    /// the file, then the per-user default.
    pub fn resolve(file: FileConfig, flags: FlagConfig, env_cache: Option<PathBuf>) -> Result<Self, Failure> {
        let mut params = BoundParams::default();
        if let Some(v) = flags.gap_tol.or(file.gap_tol) {
            params.solver.gap_tol = v;
        }
        if let Some(v) = flags.feas_tol.or(file.feas_tol) {
            params.solver.feas_tol = v;
        }
        if let Some(v) = file.max_iter {
            params.solver.max_iter = v;
        }
        if let Some(v) = flags.round_margin.or(file.round_margin) {
            params.round_margin = v;
        }
        params.solver.validate().map_err(Failure::from)?;
        if !(params.round_margin >= 0.0 && params.round_margin < 1.0) {
            return Err(Failure::input(format!("round margin {} outside [0, 1)", params.round_margin)));
        }
        let cache = if flags.no_cache {
            None
        } else {
            Some(flags.cache.or(env_cache).or(file.cache).unwrap_or_else(default_cache_path))
        };
        let jobs = flags.jobs.or(file.jobs).unwrap_or(1);
        if jobs == 0 {
            return Err(Failure::input("--jobs must be at least 1".into()));
        }
        Ok(RunConfig {
            params,
            cache,
            format: flags.format.or(file.format).unwrap_or_default(),
            jobs,
            strict: flags.strict || file.strict.unwrap_or(false),
            verbose: flags.verbose.max(file.verbose.unwrap_or(0)),
            max_n: file.max_n,
        })
    }

    pub fn check_length(&self, n: u32) -> Result<(), Failure> {
        match self.max_n {
            Some(cap) if n > cap => Err(Failure::input(format!("n = {n} exceeds configured max_n = {cap}"))),
            _ => Ok(()),
        }
    }
}

fn default_cache_path() -> PathBuf {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")));
    match base {
        Some(b) => b.join("codebound").join("results.csv"),
        None => PathBuf::from("codebound-results.csv"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: FileConfig = toml::from_str(
            "gap_tol = 1e-6\nround_margin = 1e-4\nformat = \"csv\"\njobs = 3\ncache = \"from-file.csv\"\nmax_n = 12\n",
        )
        .unwrap();
        let flags = FlagConfig { gap_tol: Some(1e-9), format: Some(Format::JsonLines), ..FlagConfig::default() };
        let cfg = RunConfig::resolve(file, flags, None).unwrap();
        assert_eq!(cfg.params.solver.gap_tol, 1e-9);
        assert_eq!(cfg.params.round_margin, 1e-4);
        assert_eq!(cfg.format, Format::JsonLines);
        assert_eq!(cfg.jobs, 3);
        assert_eq!(cfg.cache, Some(PathBuf::from("from-file.csv")));
        assert!(cfg.check_length(12).is_ok());
        assert!(cfg.check_length(13).is_err());
    }

    #[test]
    fn cache_precedence() {
        let file = || FileConfig { cache: Some("file.csv".into()), ..FileConfig::default() };
        let env = Some(PathBuf::from("env.csv"));
        let cfg = RunConfig::resolve(file(), FlagConfig::default(), env.clone()).unwrap();
        assert_eq!(cfg.cache, env);
        let flags = FlagConfig { cache: Some("flag.csv".into()), ..FlagConfig::default() };
        assert_eq!(RunConfig::resolve(file(), flags, env.clone()).unwrap().cache, Some("flag.csv".into()));
        let flags = FlagConfig { no_cache: true, ..FlagConfig::default() };
        assert_eq!(RunConfig::resolve(file(), flags, env).unwrap().cache, None);
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
        let flags = FlagConfig { gap_tol: Some(-1.0), ..FlagConfig::default() };
        assert_eq!(RunConfig::resolve(FileConfig::default(), flags, None).unwrap_err().code, 2);
        let flags = FlagConfig { jobs: Some(0), ..FlagConfig::default() };
        assert!(RunConfig::resolve(FileConfig::default(), flags, None).is_err());
    }
}
