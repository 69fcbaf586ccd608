// SPDX-License-Identifier: Apache-2.0

//! Upper bounds on `A(n, d)`, the largest binary code of length `n` and
//! minimum distance `d`.
//!
//! [`delsarte_lp`] and [`schrijver_sdp`] are the symmetry-reduced programs.
//! [`theta_prime_unreduced`] and [`schrijver_unreduced`] solve the same
//! relaxations on the full space and serve as oracles for the reductions.
//! [`code_to_lp_point`] and [`code_to_sdp_point`] turn a code into a feasible
//! point of the reduced programs.

mod cache;
mod delsarte;
mod result;
mod schrijver;
mod triples;


pub use cache::{params_hash, parse_cache, CacheRecord, ResultsCache, CACHE_HEADER};
pub use delsarte::{build_delsarte, sphere_packing_bound, check_lp_point, code_to_lp_point, delsarte_lp, delsarte_run, LpPoint, MAX_DELSARTE_LENGTH};
pub(crate) use result::{run_program, Side};
pub use result::{round_bound, BoundParams, BoundResult, BoundRun, Method, DEFAULT_ROUND_MARGIN};
pub use schrijver::{
    build_schrijver, build_schrijver_unreduced, code_to_sdp_point, schrijver_run, schrijver_sdp, schrijver_unreduced,
    schrijver_unreduced_run, SchrijverProgram, SdpPoint, MAX_CERTIFICATE_LENGTH, MAX_SCHRIJVER_LENGTH,
    MAX_SCHRIJVER_UNREDUCED_LENGTH,
};
pub use triples::{OrbitValue, TripleVariableSet};

use crate::error::{Error, Result};
use crate::hamming::build_gnd;

/// Largest length for [`theta_prime_unreduced`].
pub const MAX_THETA_UNREDUCED_LENGTH: u32 = 5;

pub fn theta_prime_unreduced_run(n: u32, d: u32, params: &BoundParams) -> Result<BoundRun> {
    if n > MAX_THETA_UNREDUCED_LENGTH {
        return Err(Error::CapExceeded { what: "unreduced theta length", size: n as usize, cap: MAX_THETA_UNREDUCED_LENGTH as usize });
    }
    if n == 0 || d == 0 || d > n {
        return Err(Error::OutOfRange(format!("need 1 ≤ d ≤ n, got n = {n}, d = {d}")));
    }
    let g = build_gnd(n, d)?;
    let mut run = crate::lasserre::theta_run(&g, true, params)?;
    run.result.n = n;
    run.result.d = d;
    run.result.method = Method::ThetaPrimeUnreduced;
    Ok(run)
}

/// ϑ′ of the full `2ⁿ`-vertex graph `G(n, d)`.
pub fn theta_prime_unreduced(n: u32, d: u32, params: &BoundParams) -> Result<BoundResult> {
    theta_prime_unreduced_run(n, d, params)?.into_result()
}

/// Runs `method` on `(n, d)`. Lasserre levels are not defined on `(n, d)`
/// alone and are rejected.
pub fn run_method(method: Method, n: u32, d: u32, params: &BoundParams) -> Result<BoundRun> {
    match method {
        Method::Delsarte => delsarte_run(n, d, params),
        Method::Schrijver => schrijver_run(n, d, params),
        Method::ThetaPrimeUnreduced => theta_prime_unreduced_run(n, d, params),
        Method::SchrijverUnreduced => schrijver_unreduced_run(n, d, params),
        Method::ThetaPrime | Method::Lasserre(_) => {
            Err(Error::OutOfRange(format!("{method} needs an explicit graph")))
        }
    }
}
