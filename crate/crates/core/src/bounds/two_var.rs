//! Closed-form upper bounds for two variables.

use std::fmt;

use num_traits::Zero;

use super::BoundError;
use crate::rational::{int, ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoVarCase {
    C1 { k: u32 },
    C2 { k: u32 },
    C3 { k: u32 },
    /// Exact value of D on its region.
    C4,
}

impl fmt::Display for TwoVarCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::C1 { k } => write!(f, "C.1, k={k}"),
            Self::C2 { k } => write!(f, "C.2, k={k}"),
            Self::C3 { k } => write!(f, "C.3, k={k}"),
            Self::C4 => f.write_str("C.4"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoVarBound {
    pub value: Rational,
    pub case: TwoVarCase,
}

/// Picks the region containing `(i1, i2)` and evaluates its formula.
///
/// The `i1` bands `[(r-k-1) s1, (r-k) r/(r+1) s1)` and
/// `[(r-k) r/(r+1) s1, (r-k) s1)` for `k = 1..r-1`, followed by
/// `[(r-1) s1, r s1)`, tile `[0, r s1)` with left-closed intervals, so at most
/// one case can match.
pub fn two_var_bound(i1: u64, i2: u64, r: u32, s1: u64, s2: u64) -> Result<TwoVarBound, BoundError> {
    if r == 0 || s1 == 0 || s2 == 0 {
        return Err(BoundError::InvalidParams("r, s1 and s2 must be positive".into()));
    }
    let (x1, x2) = (int(i1), int(i2));
    let (rr, f1, f2) = (int(r), int(s1), int(s2));
    let i1_over_r = &x1 / &rr;
    let r64 = u64::from(r);

    for k in 1..r {
        let k64 = u64::from(k);
        let band_split = ratio((r64 - k64) * r64 * s1, r64 + 1);
        let band_top = int((r64 - k64) * s1);
        let band_bottom = int((r64 - k64 - 1) * s1);
        if band_split <= x1 && x1 < band_top {
            if i2 < k64 * s2 {
                let value = &f2 * &i1_over_r + &x2 / &rr * (&x1 / int(r - k));
                return Ok(TwoVarBound { value, case: TwoVarCase::C1 { k } });
            }
            if i2 < (k64 + 1) * s2 {
                let value = &f2 * &i1_over_r
                    + int((k64 + 1) * s2 - i2) * (&x1 / int(r - k) - &i1_over_r)
                    + int(i2 - k64 * s2) * (&f1 - &i1_over_r);
                return Ok(TwoVarBound { value, case: TwoVarCase::C2 { k } });
            }
        }
        if band_bottom <= x1 && x1 < band_split && i2 < (k64 + 1) * s2 {
            let value = &f2 * &i1_over_r + &x2 / int(k + 1) * (&f1 - &i1_over_r);
            return Ok(TwoVarBound { value, case: TwoVarCase::C3 { k } });
        }
    }
    if (r64 - 1) * s1 <= i1 && i1 < r64 * s1 && i2 < s2 {
        let fl = i1 / r64;
        let value = int(s2 * fl + i2 * (s1 - fl));
        return Ok(TwoVarBound { value, case: TwoVarCase::C4 });
    }
    Err(BoundError::NoClosedFormCase)
}

/// `s1 s2 - (s1 - i1/r)(s2 - i2/r)` on `0 <= i1 <= r/(r+1) s1`, `0 <= i2 < r s2`.
pub fn two_var_small_bound(i1: u64, i2: u64, r: u32, s1: u64, s2: u64) -> Result<Rational, BoundError> {
    if r == 0 {
        return Err(BoundError::InvalidParams("r must be positive".into()));
    }
    let r64 = u64::from(r);
    let in_region = u128::from(i1) * u128::from(r64 + 1) <= u128::from(r64) * u128::from(s1)
        && u128::from(i2) < u128::from(r64) * u128::from(s2);
    if !in_region {
        return Err(BoundError::OutsideSmallRegion);
    }
    let rr = int(r);
    let value = int(s1 * s2) - (int(s1) - int(i1) / &rr) * (int(s2) - int(i2) / &rr);
    debug_assert!(value >= Rational::zero());
    Ok(value)
}
