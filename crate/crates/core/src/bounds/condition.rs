//! Condition A and the criteria derived from it.
//!
//! Every comparison is decided in exact arithmetic. The root thresholds of
//! the sufficient criterion are compared by raising both sides to an integer
//! power, so no floating point enters any of these predicates.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BoundError, BoundParams};
use crate::rational::{int, ratio, Rational};

/// The first clause of Condition A found to be violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionAClause {
    /// Range clause; `index` is the 1-based position of the offending exponent.
    A1 { index: usize },
    A2 { l: u32, s: u32 },
    A3 { s: u32 },
}

impl fmt::Display for ConditionAClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::A1 { index } => write!(f, "A.1, t={index}"),
            Self::A2 { l, s } => write!(f, "A.2, l={l}, s={s}"),
            Self::A3 { s } => write!(f, "A.3, s={s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionA {
    Holds,
    Fails(ConditionAClause),
}

impl ConditionA {
    pub fn holds(&self) -> bool {
        matches!(self, Self::Holds)
    }
}

impl fmt::Display for ConditionA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Holds => f.write_str("true"),
            Self::Fails(clause) => write!(f, "false ({clause})"),
        }
    }
}

/// `prod_t (s_t - i_t / d)` over the first `len` coordinates.
fn shrunk_product(exps: &[Rational], sizes: &[Rational], len: usize, d: u32) -> Rational {
    let d = int(d);
    exps[..len]
        .iter()
        .zip(&sizes[..len])
        .fold(Rational::one(), |acc, (i, s)| acc * (s - i / &d))
}

/// `s * prod (s_t - i_t/l) <= l * prod (s_t - i_t/s)` over the first `len` coordinates.
fn ratio_clause(exps: &[Rational], sizes: &[Rational], len: usize, l: u32, s: u32) -> bool {
    int(s) * shrunk_product(exps, sizes, len, l) <= int(l) * shrunk_product(exps, sizes, len, s)
}

/// Condition A for exponents and sizes given as arbitrary non-negative
/// rationals. The integer entry point [`condition_a`] delegates here.
pub fn condition_a_for_rational(
    exps: &[Rational],
    r: u32,
    sizes: &[Rational],
) -> Result<ConditionA, BoundError> {
    condition_a_with_a2_range(exps, r, sizes, r)
}

/// Condition A with (A.2) checked only for `l = 2..=a2_max_l`.
fn condition_a_with_a2_range(
    exps: &[Rational],
    r: u32,
    sizes: &[Rational],
    a2_max_l: u32,
) -> Result<ConditionA, BoundError> {
    let m = exps.len();
    if m < 2 {
        return Err(BoundError::ConditionARequiresTwoVariables);
    }
    if sizes.len() != m || r == 0 {
        return Err(BoundError::InvalidParams("malformed Condition A input".into()));
    }
    let zero = Rational::zero();
    for t in 0..m - 1 {
        if exps[t] < zero || exps[t] > sizes[t] {
            return Ok(ConditionA::Fails(ConditionAClause::A1 { index: t + 1 }));
        }
    }
    if exps[m - 1] < zero || exps[m - 1] >= int(r) * &sizes[m - 1] {
        return Ok(ConditionA::Fails(ConditionAClause::A1 { index: m }));
    }
    // (A.2) involves no coordinates when m = 2
    if m > 2 {
        for l in 2..=a2_max_l.min(r) {
            for s in 1..l {
                if !ratio_clause(exps, sizes, m - 2, l, s) {
                    return Ok(ConditionA::Fails(ConditionAClause::A2 { l, s }));
                }
            }
        }
    }
    for s in 1..r {
        if !ratio_clause(exps, sizes, m - 1, r, s) {
            return Ok(ConditionA::Fails(ConditionAClause::A3 { s }));
        }
    }
    Ok(ConditionA::Holds)
}

fn to_rationals(values: &[u64]) -> Vec<Rational> {
    values.iter().map(|&v| int(v)).collect()
}

pub fn condition_a(params: &BoundParams) -> Result<ConditionA, BoundError> {
    condition_a_for_rational(
        &to_rationals(params.exponents()),
        params.multiplicity(),
        &to_rationals(params.sizes()),
    )
}

/// Condition A with the `l = r` instances of (A.2) left out; those are
/// implied by (A.3), so this should always agree with [`condition_a`].
pub(crate) fn condition_a_without_top_a2(params: &BoundParams) -> Result<ConditionA, BoundError> {
    let r = params.multiplicity();
    condition_a_with_a2_range(
        &to_rationals(params.exponents()),
        r,
        &to_rationals(params.sizes()),
        r.saturating_sub(1),
    )
}

/// Decides `a/b <= (R - 1) / (R - 1/rho)` with `R = rho^(1/n)`, `rho >= 2`.
///
/// The threshold lies strictly inside (0, 1). For `a < b` the inequality is
/// equivalent to `(rho b - a) / (rho (b - a)) <= R`, and both sides are
/// positive, so it can be compared after raising to the `n`-th power.
fn below_root_threshold(a: u64, b: u64, rho: u64, n: u32) -> bool {
    debug_assert!(rho >= 2 && n >= 1 && b >= 1);
    if a >= b {
        return false;
    }
    let (a, b, rho) = (BigInt::from(a), BigInt::from(b), BigInt::from(rho));
    let lhs = (&rho * &b - &a).pow(n);
    let rhs = &rho * (&rho * (&b - &a)).pow(n);
    lhs <= rhs
}

/// Root-threshold sufficient criterion for Condition A (needs `m >= 3`).
///
/// With `r = 1` the first threshold is `0/0`; the (A.3)-derived term is
/// dropped there since (A.3) is vacuous, and only the second term applies.
pub fn condition_a_sufficient(params: &BoundParams) -> Result<bool, BoundError> {
    let m = params.num_vars();
    if m < 3 {
        return Err(BoundError::SufficientRequiresThreeVariables);
    }
    let (exps, sizes) = (params.exponents(), params.sizes());
    let r = u64::from(params.multiplicity());
    if exps[m - 1] >= r * sizes[m - 1] {
        return Ok(false);
    }
    let first_root = (m - 1) as u32;
    let second_root = (m - 2) as u32;
    Ok((0..m - 1).all(|t| {
        let (i, s) = (exps[t], sizes[t]);
        (r < 2 || below_root_threshold(i, s, r, first_root)) && below_root_threshold(i, s, 2, second_root)
    }))
}

/// `sum_{t=1}^{n} (-1)^{t+1} (2^{t+1} - 1) / 2^t * e_t(I_1, ..., I_n)`.
pub fn r2_equal_sizes_lhs(fractions: &[Rational]) -> Rational {
    // elementary symmetric polynomials by the usual product expansion
    let mut e = vec![Rational::zero(); fractions.len() + 1];
    e[0] = Rational::one();
    for (k, x) in fractions.iter().enumerate() {
        for t in (1..=k + 1).rev() {
            let add = &e[t - 1] * x;
            e[t] += add;
        }
    }
    let mut total = Rational::zero();
    for (t, et) in e.iter().enumerate().skip(1) {
        let weight = ratio((1i64 << (t + 1)) - 1, 1i64 << t);
        let term = weight * et;
        if t % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Condition A specialised to `r = 2` and `s_1 = ... = s_m = q`.
///
/// Besides the symmetric-polynomial inequality and `I_m < 2`, this also
/// enforces `I_t <= 1` for `t < m` (the range part of Condition A), without
/// which the two would disagree for exponents above `q`.
pub fn condition_a_r2_equal_sizes(exponents: &[u64], q: u64) -> bool {
    let Some((&last, head)) = exponents.split_last() else {
        return false;
    };
    let fractions: Vec<Rational> = head.iter().map(|&i| ratio(i, q)).collect();
    let one = Rational::one();
    fractions.iter().all(|f| *f <= one)
        && r2_equal_sizes_lhs(&fractions) <= one
        && ratio(last, q) < int(2)
}

/// True iff Condition A holds for every exponent vector componentwise at
/// most `params.exponents()`. Exhaustive; intended for desk-scale inputs.
pub fn condition_a_monotone_check(params: &BoundParams) -> Result<bool, BoundError> {
    let upper = params.exponents();
    let mut current = vec![0u64; upper.len()];
    loop {
        if !condition_a(&params.with_exponents(current.clone())?)?.holds() {
            return Ok(false);
        }
        let mut pos = current.len();
        loop {
            if pos == 0 {
                return Ok(true);
            }
            pos -= 1;
            if current[pos] < upper[pos] {
                current[pos] += 1;
                break;
            }
            current[pos] = 0;
        }
    }
}

/// `i_t <= r/(r+1) s_t` for `t < m`, a consequence of Condition A when `r >= 2`.
pub fn necessary_bound_check(params: &BoundParams) -> Result<bool, BoundError> {
    let m = params.num_vars();
    let r = u64::from(params.multiplicity());
    if m < 2 || r < 2 {
        return Err(BoundError::InvalidParams("necessary bound needs m >= 2 and r >= 2".into()));
    }
    Ok(params.exponents()[..m - 1]
        .iter()
        .zip(params.sizes())
        .all(|(&i, &s)| u128::from(i) * u128::from(r + 1) <= u128::from(r) * u128::from(s)))
}
