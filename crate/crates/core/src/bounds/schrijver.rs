// SPDX-License-Identifier: Apache-2.0

use super::result::{run_program, BoundParams, BoundResult, BoundRun, Method, Side};
use super::triples::{OrbitValue, TripleVariableSet};
use crate::algebra::{binom, BetaTable};
use crate::conic::{LmiBuilder, LmiCheck, LmiProgram};
use crate::error::{Error, Result};
use crate::hamming::{Code, TripleOrbit};
use num_traits::ToPrimitive;

/// Largest length accepted by the block-diagonal program.
pub const MAX_SCHRIJVER_LENGTH: u32 = 28;
/// Largest length accepted by the explicit `2ⁿ × 2ⁿ` program.
pub const MAX_SCHRIJVER_UNREDUCED_LENGTH: u32 = 4;
/// Largest code length for [`code_to_sdp_point`].
pub const MAX_CERTIFICATE_LENGTH: u32 = 8;

/// Three-point program on `(n, d)` in LMI form, with its orbit variables.
#[derive(Clone, Debug)]
pub struct SchrijverProgram {
    vars: TripleVariableSet,
    /// LMI unknown `v` is `x_v / scale[v]`
    scale: Vec<f64>,
    lmi: LmiProgram,
}

impl SchrijverProgram {
    pub fn variables(&self) -> &TripleVariableSet {
        &self.vars
    }

    pub fn lmi(&self) -> &LmiProgram {
        &self.lmi
    }
}

/// Adds `coef · value` to entry (i, j) of block `blk`.
fn put(b: &mut LmiBuilder, scale: &[f64], blk: usize, i: usize, j: usize, coef: f64, value: OrbitValue) {
    match value {
        OrbitValue::Zero => {}
        OrbitValue::One => b.block_constant(blk, i, j, coef),
        OrbitValue::Var(v) => b.block_term(blk, v, i, j, coef * scale[v]),
    }
}

/// Typical size of each variable: a code of density ρ has pair moments near
/// ρ and triple moments near ρ², with ρ from the sphere-packing bound.
fn variable_scale(vars: &TripleVariableSet) -> Vec<f64> {
    let (n, d) = (vars.n() as i64, vars.d() as i64);
    let ball: f64 = (0..=(d - 1) / 2).map(|i| binom(n, i).to_f64().expect("finite")).sum();
    let rho = (1.0 / ball).min(1.0);
    vars.variable_orbits().iter().map(|o| if o.is_degenerate() { rho } else { rho * rho }).collect()
}

/// Objective, nonnegativity and monotonicity rows shared by both programs.
fn linear_part(vars: &TripleVariableSet, scale: &[f64]) -> LmiBuilder {
    let n = vars.n();
    let mut b = LmiBuilder::new(vars.num_vars());
    b.add_objective_constant(1.0);
    for j in 1..=n {
        if let OrbitValue::Var(v) = vars.pair(j) {
            b.set_objective(v, binom(n as i64, j as i64).to_f64().expect("finite") * scale[v]);
        }
    }
    for (pos, o) in vars.orbits().iter().enumerate() {
        let OrbitValue::Var(v) = vars.value(pos) else { continue };
        b.add_row(0.0, vec![(v, 1.0)]);
        let sv = scale[v];
        let mut ds = o.distances().to_vec();
        ds.dedup();
        for delta in ds {
            match vars.pair(delta) {
                OrbitValue::One => b.add_row(1.0, vec![(v, -sv)]),
                OrbitValue::Var(p) if p != v => b.add_row(0.0, vec![(p, scale[p]), (v, -sv)]),
                _ => {}
            }
        }
    }
    b
}

fn check_nd(n: u32, d: u32, max: u32) -> Result<()> {
    if n == 0 || n > max || d == 0 || d > n {
        return Err(Error::OutOfRange(format!("need 1 ≤ d ≤ n ≤ {max}, got n = {n}, d = {d}")));
    }
    Ok(())
}

/// Block-diagonal three-point program: for each `k ≤ n/2`, the images
/// `S_k(x) ⪰ 0` and `S′_k(x) ⪰ 0` of the two moment matrices based at a
/// codeword, plus `x ≥ 0` and `x_ω ≤ p_δ` for each distance `δ` of `ω`.
pub fn build_schrijver(n: u32, d: u32) -> Result<SchrijverProgram> {
    check_nd(n, d, MAX_SCHRIJVER_LENGTH)?;
    let vars = TripleVariableSet::new(n, d)?;
    let table = BetaTable::new(n);
    let scale = variable_scale(&vars);
    let mut b = linear_part(&vars, &scale);
    for k in 0..table.num_blocks() {
        let size = table.block_size(k);
        let s = b.add_block(size);
        let s2 = b.add_block(size);
        for (r, c, (i, j, t), f) in table.float_entries(k) {
            if r > c {
                continue;
            }
            let x = vars.value(vars.orbit_of(i, j, t).expect("indexed pattern"));
            put(&mut b, &scale, s, r, c, f, x);
            put(&mut b, &scale, s2, r, c, f, vars.pair(i + j - 2 * t));
            put(&mut b, &scale, s2, r, c, -f, x);
        }
    }
    Ok(SchrijverProgram { vars, scale, lmi: b.build()? })
}

pub fn schrijver_run(n: u32, d: u32, params: &BoundParams) -> Result<BoundRun> {
    let prog = build_schrijver(n, d)?;
    run_program(prog.lmi.problem(), Side::Lmi, n, d, Method::Schrijver, params)
}

/// Three-point semidefinite bound on `A(n, d)`.
pub fn schrijver_sdp(n: u32, d: u32, params: &BoundParams) -> Result<BoundResult> {
    schrijver_run(n, d, params)?.into_result()
}

/// The same program with both moment matrices written out as `2ⁿ × 2ⁿ`
/// matrices indexed by words, based at the zero word.
pub fn build_schrijver_unreduced(n: u32, d: u32) -> Result<SchrijverProgram> {
    if n > MAX_SCHRIJVER_UNREDUCED_LENGTH {
        return Err(Error::CapExceeded { what: "unreduced three-point length", size: n as usize, cap: MAX_SCHRIJVER_UNREDUCED_LENGTH as usize });
    }
    check_nd(n, d, MAX_SCHRIJVER_UNREDUCED_LENGTH)?;
    let vars = TripleVariableSet::new(n, d)?;
    let scale = variable_scale(&vars);
    let mut b = linear_part(&vars, &scale);
    let size = 1usize << n;
    let m = b.add_block(size);
    let m2 = b.add_block(size);
    for u in 0..size as u32 {
        for v in u..size as u32 {
            let o = TripleOrbit::new(u.count_ones(), v.count_ones(), (u ^ v).count_ones(), n)?;
            let x = vars.value(vars.position(&o).expect("every word triple is realizable"));
            put(&mut b, &scale, m, u as usize, v as usize, 1.0, x);
            put(&mut b, &scale, m2, u as usize, v as usize, 1.0, vars.pair((u ^ v).count_ones()));
            put(&mut b, &scale, m2, u as usize, v as usize, -1.0, x);
        }
    }
    Ok(SchrijverProgram { vars, scale, lmi: b.build()? })
}

pub fn schrijver_unreduced_run(n: u32, d: u32, params: &BoundParams) -> Result<BoundRun> {
    let prog = build_schrijver_unreduced(n, d)?;
    run_program(prog.lmi.problem(), Side::Lmi, n, d, Method::SchrijverUnreduced, params)
}

pub fn schrijver_unreduced(n: u32, d: u32, params: &BoundParams) -> Result<BoundResult> {
    schrijver_unreduced_run(n, d, params)?.into_result()
}

/// Orbit values of a code, checked against the three-point program.
#[derive(Clone, Debug)]
pub struct SdpPoint {
    pub n: u32,
    pub d: u32,
    /// `x_ω` for every realizable orbit
    pub values: Vec<(TripleOrbit, f64)>,
    /// the same values at the program's free variables
    pub point: Vec<f64>,
    pub check: LmiCheck,
}

impl SdpPoint {
    pub fn get(&self, o: &TripleOrbit) -> Option<f64> {
        self.values.iter().find(|(p, _)| p == o).map(|(_, v)| *v)
    }
}

/// Averaged translate moments of a code: `x_ω` is the mean over all sets
/// `S` of orbit `ω` of `|{v : S + v ⊆ c}| / |c|`. Fails unless the point
/// satisfies every constraint of [`build_schrijver`] to within `1e-9` and
/// has objective `|c|`.
pub fn code_to_sdp_point(c: &Code, d: u32) -> Result<SdpPoint> {
    let n = c.length();
    if n > MAX_CERTIFICATE_LENGTH {
        return Err(Error::CapExceeded { what: "certificate code length", size: n as usize, cap: MAX_CERTIFICATE_LENGTH as usize });
    }
    check_nd(n, d, MAX_CERTIFICATE_LENGTH)?;
    if c.is_empty() || !c.has_min_distance(d) {
        return Err(Error::Verification(format!("code does not have minimum distance {d}")));
    }
    let prog = build_schrijver(n, d)?;
    let vars = &prog.vars;
    let slot = |a: u32, b: u32, c: u32| -> usize {
        let o = TripleOrbit::new(a, b, c, n).expect("realizable");
        vars.position(&o).expect("orbit is listed")
    };

    // ordered triples of the whole space per orbit, divided by 2ⁿ
    let mut space = vec![0u64; vars.orbits().len()];
    for u in 0u32..1 << n {
        for v in 0u32..1 << n {
            space[slot(u.count_ones(), v.count_ones(), (u ^ v).count_ones())] += 1;
        }
    }
    // ordered triples of the code per orbit
    let words: Vec<u32> = c.words().iter().map(|w| w.bits()).collect();
    let mut inside = vec![0u64; vars.orbits().len()];
    for &a in &words {
        for &u in &words {
            for &v in &words {
                inside[slot((a ^ u).count_ones(), (a ^ v).count_ones(), (u ^ v).count_ones())] += 1;
            }
        }
    }
    let size = words.len() as f64;
    let values: Vec<(TripleOrbit, f64)> = vars
        .orbits()
        .iter()
        .enumerate()
        .map(|(k, o)| (*o, inside[k] as f64 / (size * space[k] as f64)))
        .collect();

    let mut point = vec![0.0; vars.num_vars()];
    for (k, (o, x)) in values.iter().enumerate() {
        match vars.value(k) {
            OrbitValue::Var(v) => point[v] = *x / prog.scale[v],
            OrbitValue::One if (x - 1.0).abs() > 1e-12 => {
                return Err(Error::Verification(format!("orbit {o} should be 1, got {x}")));
            }
            OrbitValue::Zero if *x != 0.0 => {
                return Err(Error::Verification(format!("orbit {o} should be 0, got {x}")));
            }
            _ => {}
        }
    }
    let check = prog.lmi.check(&point)?;
    if !check.is_feasible(1e-9) {
        return Err(Error::Verification(format!("code moments violate the three-point program: {check:?}")));
    }
    if (check.objective - size).abs() > 1e-9 * size {
        return Err(Error::Verification(format!("objective {} differs from code size {size}", check.objective)));
    }
    Ok(SdpPoint { n, d, values, point, check })
}
