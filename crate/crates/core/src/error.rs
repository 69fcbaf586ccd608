// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not square")]
    NotSquare,

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("not a Hermitian matrix: {0}")]
    NotHermitian(String),

    #[error("group enumeration exceeded cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("size cap exceeded: {what} ({size} > {cap}); use a symmetry-reduced bound instead")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("solver did not reach optimality: {0}")]
    Solver(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
