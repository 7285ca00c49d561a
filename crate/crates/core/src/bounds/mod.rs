//! Upper bounds on the number of grid zeros of multiplicity at least `r`.
//!
//! Every bound takes a [`BoundParams`] describing the lex-leading exponent
//! `(i_1, ..., i_m)` of a polynomial, the multiplicity target `r` and the grid
//! set sizes `(s_1, ..., s_m)`. Integer-valued bounds are returned as
//! [`BigUint`], fractional ones as exact [`Rational`]s; nothing is rounded
//! until display.

mod condition;
mod recursive;
mod two_var;

pub(crate) use condition::condition_a_without_top_a2;
pub use condition::{
    condition_a, condition_a_for_rational, condition_a_monotone_check, condition_a_r2_equal_sizes,
    condition_a_sufficient, necessary_bound_check, r2_equal_sizes_lhs, ConditionA,
    ConditionAClause,
};
pub use recursive::{
    d_base, d_recursive, d_recursive_uncached, enumerate_a, CompositionTuple, DEvaluator,
};
pub use two_var::{two_var_bound, two_var_small_bound, TwoVarBound, TwoVarCase};

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("exponent not below set size: i_{index} = {exponent} >= s_{index} = {size}")]
    ExponentNotBelowSetSize { index: usize, exponent: u64, size: u64 },
    #[error("condition A fails ({0})")]
    ConditionAFails(ConditionAClause),
    #[error("Condition A requires m >= 2")]
    ConditionARequiresTwoVariables,
    #[error(
        "the root-threshold criterion requires m >= 3; for m = 2 use i_1 <= r/(r+1) s_1, i_2 < r s_2"
    )]
    SufficientRequiresThreeVariables,
    #[error("no closed-form case applies")]
    NoClosedFormCase,
    #[error("outside small-exponent region: need i_1 <= r/(r+1) s_1 and i_2 < r s_2")]
    OutsideSmallRegion,
}

/// Exponent vector, multiplicity target and grid sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundParams {
    exponents: Vec<u64>,
    multiplicity: u32,
    sizes: Vec<u64>,
}

impl BoundParams {
    pub fn new(exponents: Vec<u64>, multiplicity: u32, sizes: Vec<u64>) -> Result<Self, BoundError> {
        if exponents.is_empty() {
            return Err(BoundError::InvalidParams("need at least one variable".into()));
        }
        if exponents.len() != sizes.len() {
            return Err(BoundError::InvalidParams(format!(
                "{} exponents but {} set sizes",
                exponents.len(),
                sizes.len()
            )));
        }
        if multiplicity == 0 {
            return Err(BoundError::InvalidParams("multiplicity target r must be >= 1".into()));
        }
        if let Some(t) = sizes.iter().position(|&s| s == 0) {
            return Err(BoundError::InvalidParams(format!("set size s_{} must be >= 1", t + 1)));
        }
        Ok(Self { exponents, multiplicity, sizes })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn grid_size(&self) -> BigUint {
        product(&self.sizes)
    }

    /// Same sizes and `r`, different exponents.
    pub fn with_exponents(&self, exponents: Vec<u64>) -> Result<Self, BoundError> {
        Self::new(exponents, self.multiplicity, self.sizes.clone())
    }
}

impl fmt::Display for BoundParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "i=({}) r={} s=({})",
            join(&self.exponents),
            self.multiplicity,
            join(&self.sizes)
        )
    }
}

pub(crate) fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn product(values: &[u64]) -> BigUint {
    values.iter().fold(BigUint::one(), |acc, &v| acc * v)
}

/// `i_1 s_2 ... s_m + s_1 i_2 s_3 ... s_m + ... + s_1 ... s_{m-1} i_m`.
pub fn sz_sum_bound(params: &BoundParams) -> BigUint {
    let sizes = params.sizes();
    params
        .exponents()
        .iter()
        .enumerate()
        .map(|(t, &i)| {
            let others = sizes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != t)
                .fold(BigUint::one(), |acc, (_, &s)| acc * s);
            others * i
        })
        .sum()
}

/// `min(sz_sum_bound / r, s_1 ... s_m)`, exact.
pub fn sz_mult_bound(params: &BoundParams) -> Rational {
    let sum = rational::from_biguint(&sz_sum_bound(params)) / rational::int(params.multiplicity());
    let grid = rational::from_biguint(&params.grid_size());
    sum.min(grid)
}

/// `s_1 ... s_m - (s_1 - i_1) ... (s_m - i_m)`, defined when every `i_t < s_t`.
pub fn footprint_bound(params: &BoundParams) -> Result<BigUint, BoundError> {
    let mut remaining = BigUint::one();
    for (t, (&i, &s)) in params.exponents().iter().zip(params.sizes()).enumerate() {
        if i >= s {
            return Err(BoundError::ExponentNotBelowSetSize { index: t + 1, exponent: i, size: s });
        }
        remaining *= s - i;
    }
    Ok(params.grid_size() - remaining)
}

/// `s_1 ... s_m - (s_1 - i_1/r) ... (s_m - i_m/r)` without checking Condition A.
pub fn closed_form_bound_unchecked(params: &BoundParams) -> Rational {
    let r = rational::int(params.multiplicity());
    let remaining = params
        .exponents()
        .iter()
        .zip(params.sizes())
        .fold(rational::int(1), |acc, (&i, &s)| acc * (rational::int(s) - rational::int(i) / &r));
    rational::from_biguint(&params.grid_size()) - remaining
}

/// Closed-form bound, valid as an upper bound on D whenever Condition A holds.
pub fn closed_form_bound(params: &BoundParams) -> Result<Rational, BoundError> {
    match condition_a(params)? {
        ConditionA::Holds => Ok(closed_form_bound_unchecked(params)),
        ConditionA::Fails(clause) => Err(BoundError::ConditionAFails(clause)),
    }
}
