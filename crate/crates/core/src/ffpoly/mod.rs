//! Sparse multivariate polynomials over prime fields, Hasse derivatives and
//! multiplicities of zeros.

mod factor;
mod field;
mod grid;
mod poly;
mod text;

pub use factor::FactorSpec;
pub use field::{Fp, PrimeField, MAX_MODULUS};
pub use grid::{grid_count_mult_at_least, grid_multiplicity_sum, Grid};
pub use poly::{binomial_mod, Multiplicity, SparsePolynomial};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} too large (limit {MAX_MODULUS})")]
    ModulusTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("duplicate point {point} for variable X{var}")]
    DuplicatePoint { var: usize, point: u64 },
    #[error("point index {index} out of range for variable X{var} ({len} points)")]
    IndexOutOfRange { var: usize, index: usize, len: usize },
    #[error("infinite sum: the zero polynomial vanishes to infinite order everywhere")]
    InfiniteSum,
    #[error("parse error: {0}")]
    Parse(String),
}
