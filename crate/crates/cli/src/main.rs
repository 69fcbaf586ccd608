// SPDX-License-Identifier: Apache-2.0

//! `codebound`: upper bounds on binary codes from the command line.

mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use codebound::audit::{run_suite, Suite};
use codebound::bounds::{
    build_delsarte, build_schrijver, build_schrijver_unreduced, params_hash, run_method, CacheRecord, Method,
    ResultsCache,
};
use codebound::conic::text::write_conic;
use codebound::hamming::{build_gnd, independence_number, independence_number_par, parse_edge_list, Graph};
use codebound::lasserre::{build_lasserre, build_theta, las, theta_prime};
use codebound::solver::solve_logged;
use codebound::{ConicProblem, Error};
use config::{FileConfig, FlagConfig, Format, RunConfig, CACHE_ENV};
use output::Cell;
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Mutex;

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: String) -> Self {
        Failure { code: 2, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Solver(_) => 3,
            Error::Verification(_) => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

#[derive(Parser)]
#[command(name = "codebound", version, about = "Upper bounds on binary codes via LP and SDP relaxations")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// TOML file with default settings
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// results cache (CSV)
    #[arg(long, global = true, conflicts_with = "no_cache")]
    cache: Option<PathBuf>,
    /// neither read nor write the results cache
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    gap_tol: Option<f64>,
    #[arg(long, global = true)]
    feas_tol: Option<f64>,
    #[arg(long, global = true)]
    round_margin: Option<f64>,
    /// worker threads
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// fail on any failed table cell
    #[arg(long, global = true)]
    strict: bool,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand)]
enum Command {
    /// Exact independence number of G(n, d) with a witness code
    Alpha {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        d: u32,
    },
    /// Solve one bound program
    Bound(BoundArgs),
    /// Run a self-check suite: reductions, certificates, algebra or all
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
    /// Grid of integer bounds over n and d
    Table {
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        n_min: Option<u32>,
        #[arg(long = "d", value_delimiter = ',', required = true)]
        d: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "delsarte,schrijver")]
        methods: Vec<String>,
    },
}

#[derive(Args)]
struct BoundArgs {
    /// delsarte, schrijver, theta-prime-unreduced, schrijver-unreduced, theta-prime or lasserre
    method: String,
    #[arg(short)]
    n: Option<u32>,
    #[arg(short)]
    d: Option<u32>,
    /// Lasserre level
    #[arg(short)]
    t: Option<u32>,
    /// graph in edge-list format, for theta-prime and lasserre
    #[arg(long)]
    graph: Option<PathBuf>,
    /// write the conic program to this path before solving
    #[arg(long)]
    dump_conic: Option<PathBuf>,
    /// write per-iteration solver progress (CSV) to this path
    #[arg(long)]
    iterate_log: Option<PathBuf>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(name: &str, t: Option<u32>) -> Result<Method, Failure> {
    let level_ok = |t: u32| if t == 0 { Err(Failure::input("Lasserre level must be at least 1".into())) } else { Ok(t) };
    match (name, t) {
        ("lasserre", Some(t)) => Ok(Method::Lasserre(level_ok(t)?)),
        ("lasserre", None) => Err(Failure::input("lasserre needs -t".into())),
        (other, t) => {
            let m: Method = other.parse().map_err(Failure::from)?;
            match (m, t) {
                (Method::Lasserre(a), Some(b)) if a != b => {
                    Err(Failure::input(format!("level {a} in the method name conflicts with -t {b}")))
                }
                (Method::Lasserre(_), _) | (_, None) => Ok(m),
                (_, Some(_)) => Err(Failure::input(format!("-t applies only to lasserre, not {m}"))),
            }
        }
    }
}

fn is_graph_method(m: Method) -> bool {
    matches!(m, Method::ThetaPrime | Method::Lasserre(_))
}

/// Shared cache handle; writes are serialized through the lock.
struct Store {
    cache: Option<Mutex<ResultsCache>>,
    hash: String,
}

impl Store {
    fn open(cfg: &RunConfig) -> Result<Self, Failure> {
        let cache = match &cfg.cache {
            Some(p) => Some(Mutex::new(ResultsCache::open(p)?)),
            None => None,
        };
        Ok(Store { cache, hash: params_hash(&cfg.params) })
    }

    fn lookup(&self, m: Method, n: u32, d: u32) -> Option<CacheRecord> {
        let c = self.cache.as_ref()?.lock().expect("cache lock");
        c.lookup(m, n, d, &self.hash).cloned()
    }

    fn append(&self, rec: &CacheRecord) -> Result<(), Failure> {
        if let Some(c) = &self.cache {
            c.lock().expect("cache lock").append(rec.clone())?;
        }
        Ok(())
    }
}

/// Bound on (n, d) served from the cache when possible.
fn code_bound(m: Method, n: u32, d: u32, cfg: &RunConfig, store: &Store) -> Result<(CacheRecord, bool), Failure> {
    cfg.check_length(n)?;
    if let Some(hit) = store.lookup(m, n, d) {
        return Ok((hit, true));
    }
    let result = match m {
        Method::Lasserre(t) => {
            let mut r = las(&build_gnd(n, d)?, t as usize, &cfg.params)?;
            (r.n, r.d) = (n, d);
            r
        }
        Method::ThetaPrime => {
            let mut r = theta_prime(&build_gnd(n, d)?, &cfg.params)?;
            (r.n, r.d) = (n, d);
            r
        }
        _ => run_method(m, n, d, &cfg.params)?.into_result()?,
    };
    if cfg.verbose > 0 {
        eprintln!("{m} ({n},{d}): {} in {:.2?}", result.status, result.wall_time);
    }
    let rec = CacheRecord::new(&result, store.hash.clone());
    store.append(&rec)?;
    Ok((rec, false))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read graph {}: {e}", path.display())))?;
    Ok(parse_edge_list(&text)?)
}

fn conic_program(m: Method, n: u32, d: u32, graph: Option<&Graph>) -> Result<ConicProblem, Failure> {
    let gnd;
    let g = match graph {
        Some(g) => g,
        None if is_graph_method(m) || m == Method::ThetaPrimeUnreduced => {
            gnd = build_gnd(n, d)?;
            &gnd
        }
        None => &Graph::empty(0),
    };
    Ok(match m {
        Method::Delsarte => build_delsarte(n, d)?,
        Method::Schrijver => build_schrijver(n, d)?.lmi().problem().clone(),
        Method::SchrijverUnreduced => build_schrijver_unreduced(n, d)?.lmi().problem().clone(),
        Method::ThetaPrimeUnreduced | Method::ThetaPrime => build_theta(g, true)?,
        Method::Lasserre(t) => build_lasserre(g, t as usize)?.problem().clone(),
    })
}

fn cmd_bound(args: BoundArgs, cfg: &RunConfig) -> Result<String, Failure> {
    let m = parse_method(&args.method, args.t)?;
    let graph = match &args.graph {
        Some(_) if !is_graph_method(m) => return Err(Failure::input(format!("--graph does not apply to {m}"))),
        Some(p) => Some(read_graph(p)?),
        None => None,
    };
    let nd = match (args.n, args.d, &graph) {
        (Some(n), Some(d), None) => Some((n, d)),
        (None, None, Some(_)) => None,
        (_, _, Some(_)) => return Err(Failure::input("give either --graph or -n/-d, not both".into())),
        _ => return Err(Failure::input(format!("{m} needs -n and -d"))),
    };
    if args.dump_conic.is_some() || args.iterate_log.is_some() {
        let (n, d) = nd.unwrap_or((0, 0));
        let p = conic_program(m, n, d, graph.as_ref())?;
        if let Some(path) = &args.dump_conic {
            write_file(path, &write_conic(&p))?;
        }
        if let Some(path) = &args.iterate_log {
            let (_, log) = solve_logged(&p, &cfg.params.solver);
            write_file(path, &log.to_csv())?;
        }
    }
    let rec = match (nd, graph) {
        (Some((n, d)), _) => {
            let store = Store::open(cfg)?;
            let (rec, hit) = code_bound(m, n, d, cfg, &store)?;
            if hit && cfg.verbose > 0 {
                eprintln!("{m} ({n},{d}): from cache");
            }
            rec
        }
        (None, Some(g)) => {
            let r = match m {
                Method::Lasserre(t) => las(&g, t as usize, &cfg.params)?,
                _ => theta_prime(&g, &cfg.params)?,
            };
            CacheRecord::new(&r, params_hash(&cfg.params))
        }
        (None, None) => unreachable!("checked above"),
    };
    Ok(output::records(cfg.format, &[rec]))
}

fn cmd_alpha(n: u32, d: u32, cfg: &RunConfig) -> Result<String, Failure> {
    let g = build_gnd(n, d)?;
    let set = if cfg.jobs > 1 { independence_number_par(&g, cfg.jobs)? } else { independence_number(&g)? };
    Ok(output::alpha(cfg.format, n, d, set.size, &set.witness))
}

fn cmd_verify(suite: Suite, cfg: &RunConfig) -> Result<(String, bool), Failure> {
    let report = run_suite(suite, &cfg.params);
    Ok((output::audit(cfg.format, &report), report.passed()))
}

fn cmd_table(
    n_min: Option<u32>,
    n_max: u32,
    ds: &[u32],
    methods: &[String],
    cfg: &RunConfig,
) -> Result<(String, bool), Failure> {
    let methods = methods.iter().map(|s| parse_method(s, None)).collect::<Result<Vec<_>, _>>()?;
    if ds.contains(&0) {
        return Err(Failure::input("d must be at least 1".into()));
    }
    let n_min = n_min.unwrap_or_else(|| ds.iter().copied().min().unwrap_or(1)).max(1);
    if n_min > n_max {
        return Err(Failure::input(format!("empty range n = {n_min}..={n_max}")));
    }
    let ns: Vec<u32> = (n_min..=n_max).collect();
    let store = Store::open(cfg)?;
    let keys: Vec<(Method, u32, u32)> =
        methods.iter().flat_map(|&m| ns.iter().flat_map(move |&n| ds.iter().map(move |&d| (m, n, d)))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Failure::input(format!("thread pool: {e}")))?;
    let cells: Vec<Cell> = pool.install(|| {
        keys.par_iter()
            .map(|&(m, n, d)| {
                if d > n {
                    return Cell::Empty;
                }
                match code_bound(m, n, d, cfg, &store) {
                    Ok((rec, _)) => Cell::Bound(rec),
                    Err(f) if f.code == 2 => Cell::Capped,
                    Err(f) => Cell::Failed(f.message),
                }
            })
            .collect()
    });
    let mut clean = true;
    for ((m, n, d), cell) in keys.iter().zip(&cells) {
        if let Cell::Failed(msg) = cell {
            eprintln!("warning: {m} ({n},{d}): {msg}");
            clean = false;
        }
    }
    Ok((output::grid(cfg.format, &methods, &ns, ds, &cells), clean))
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let g = cli.global;
    let file = match &g.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let flags = FlagConfig {
        gap_tol: g.gap_tol,
        feas_tol: g.feas_tol,
        round_margin: g.round_margin,
        cache: g.cache,
        no_cache: g.no_cache,
        format: g.format,
        jobs: g.jobs,
        strict: g.strict,
        verbose: g.verbose,
    };
    let env_cache = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    let cfg = RunConfig::resolve(file, flags, env_cache)?;

    let (text, code) = match cli.command {
        Command::Alpha { n, d } => (cmd_alpha(n, d, &cfg)?, 0),
        Command::Bound(args) => (cmd_bound(args, &cfg)?, 0),
        Command::Verify { suite } => {
            let (text, ok) = cmd_verify(suite, &cfg)?;
            (text, if ok { 0 } else { 4 })
        }
        Command::Table { n_max, n_min, d, methods } => {
            let (text, clean) = cmd_table(n_min, n_max, &d, &methods, &cfg)?;
            (text, if clean || !cfg.strict { 0 } else { 3 })
        }
    };
    print!("{text}");
    Ok(ExitCode::from(code))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::from(Error::Solver("x".into())).code, 3);
        assert_eq!(Failure::from(Error::Verification("x".into())).code, 4);
        assert_eq!(Failure::from(Error::CapExceeded { what: "x", size: 2, cap: 1 }).code, 2);
        assert_eq!(Failure::from(Error::OutOfRange("x".into())).code, 2);
    }

    #[test]
    fn method_arguments() {
        assert_eq!(parse_method("lasserre", Some(2)).unwrap(), Method::Lasserre(2));
        assert_eq!(parse_method("lasserre-3", None).unwrap(), Method::Lasserre(3));
        assert_eq!(parse_method("lasserre-3", Some(3)).unwrap(), Method::Lasserre(3));
        assert!(parse_method("lasserre-3", Some(2)).is_err());
        assert!(parse_method("lasserre", None).is_err());
        assert!(parse_method("lasserre", Some(0)).is_err());
        assert!(parse_method("delsarte", Some(2)).is_err());
        assert_eq!(parse_method("schrijver", None).unwrap(), Method::Schrijver);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
