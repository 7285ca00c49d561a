//! Sampling the Condition A region for equal set sizes on a rational grid
//! over `[0, 1]^(m-1)`, in normalized coordinates `I_t = i_t / q`.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::bounds::{condition_a_for_rational, r2_equal_sizes_lhs, BoundError};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub r: u32,
    pub m: usize,
    pub q: u64,
    pub step: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfacePoint {
    pub coords: Vec<Rational>,
    /// Left-hand side of the symmetric-polynomial form; only for `r = 2`.
    pub lhs: Option<Rational>,
    pub satisfied: bool,
    /// For `r = 2`: `lhs = 1` exactly. Otherwise: satisfied, but raising
    /// some coordinate by one step (within the grid) is not.
    pub boundary: bool,
}

fn satisfied(spec: &SurfaceSpec, coords: &[Rational]) -> Result<bool, BoundError> {
    let q = int(spec.q);
    let mut exps: Vec<Rational> = coords.iter().map(|c| c * &q).collect();
    exps.push(Rational::zero());
    Ok(condition_a_for_rational(&exps, spec.r, &vec![q; spec.m])?.holds())
}

/// Grid points in lexicographic order, last coordinate fastest.
pub fn surface_grid(spec: &SurfaceSpec) -> Result<Vec<SurfacePoint>, BoundError> {
    if spec.step <= Rational::zero() {
        return Err(BoundError::InvalidParams("step must be positive".into()));
    }
    if spec.m < 2 || spec.r == 0 || spec.q == 0 {
        return Err(BoundError::InvalidParams("surface needs m >= 2, r >= 1 and q >= 1".into()));
    }
    let mut axis = Vec::new();
    let mut v = Rational::zero();
    while v <= Rational::one() {
        axis.push(v.clone());
        v += &spec.step;
    }
    let dims = spec.m - 1;
    let mut index = vec![0usize; dims];
    let mut out = Vec::new();
    loop {
        let coords: Vec<Rational> = index.iter().map(|&k| axis[k].clone()).collect();
        let point = if spec.r == 2 {
            let lhs = r2_equal_sizes_lhs(&coords);
            let one = Rational::one();
            SurfacePoint { satisfied: lhs <= one, boundary: lhs == one, lhs: Some(lhs), coords }
        } else {
            let ok = satisfied(spec, &coords)?;
            let mut edge = false;
            if ok {
                for t in 0..dims {
                    if index[t] + 1 < axis.len() {
                        let mut next = coords.clone();
                        next[t] = axis[index[t] + 1].clone();
                        edge |= !satisfied(spec, &next)?;
                    }
                }
            }
            SurfacePoint { coords, lhs: None, satisfied: ok, boundary: edge }
        };
        out.push(point);

        let mut pos = dims;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < axis.len() {
                break;
            }
            index[pos] = 0;
        }
    }
}

/// CSV with columns `I1..I{m-1},lhs,satisfied,boundary`; exact rationals.
pub fn surface_csv(points: &[SurfacePoint], m: usize) -> String {
    let mut out = String::new();
    let names: Vec<String> = (1..m).map(|t| format!("I{t}")).collect();
    writeln!(out, "{},lhs,satisfied,boundary", names.join(",")).unwrap();
    for p in points {
        let coords: Vec<String> = p.coords.iter().map(Rational::to_string).collect();
        let lhs = p.lhs.as_ref().map(Rational::to_string).unwrap_or_default();
        writeln!(out, "{},{},{},{}", coords.join(","), lhs, p.satisfied, p.boundary).unwrap();
    }
    out
}
