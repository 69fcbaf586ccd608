// SPDX-License-Identifier: Apache-2.0

//! Upper bounds on the size of binary codes from symmetry-reduced linear and
//! semidefinite programs, with a block-diagonal conic interior-point solver
//! and brute-force oracles for small parameters.

pub mod algebra;
pub mod audit;
pub mod bounds;
pub mod conic;
pub mod hamming;
pub mod lasserre;
pub mod error;
pub mod linalg;
pub mod solver;

pub use conic::{
    BlockSymMatrix, ConeSpec, ConicProblem, Constraint, HermitianMatrix, Solution, SolveStatus, SparseBlockSym,
};
pub use error::{Error, Result};
pub use solver::{solve, SolverParams};
