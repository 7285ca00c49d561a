use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use super::{product, BoundParams};

/// Weight tuple `(u_1, ..., u_r)` from the feasible set
/// `A(i, r, s) = { u : u_1 + ... + u_r <= s, u_1 + 2 u_2 + ... + r u_r <= i }`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompositionTuple {
    pub weights: Vec<u64>,
}

impl CompositionTuple {
    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn weighted_total(&self) -> u64 {
        self.weights.iter().zip(1..).map(|(&u, j)| u * j).sum()
    }
}

/// `min(floor(i1 / r), s1)`.
pub fn d_base(i1: u64, r: u32, s1: u64) -> u64 {
    (i1 / u64::from(r)).min(s1)
}

fn for_each_in_a(exponent: u64, r: u32, size: u64, mut visit: impl FnMut(&[u64])) {
    fn walk(
        j: usize,
        weights: &mut Vec<u64>,
        left_count: u64,
        left_weight: u64,
        visit: &mut dyn FnMut(&[u64]),
    ) {
        if j == weights.len() {
            visit(weights);
            return;
        }
        let step = j as u64 + 1;
        let cap = left_count.min(left_weight / step);
        for u in 0..=cap {
            weights[j] = u;
            walk(j + 1, weights, left_count - u, left_weight - u * step, visit);
        }
        weights[j] = 0;
    }
    let mut weights = vec![0; r as usize];
    walk(0, &mut weights, size, exponent, &mut visit);
}

/// All members of `A(i_m, r, s_m)` in lexicographic order on `(u_1, ..., u_r)`.
pub fn enumerate_a(exponent: u64, r: u32, size: u64) -> Vec<CompositionTuple> {
    let mut out = Vec::new();
    for_each_in_a(exponent, r, size, |w| out.push(CompositionTuple { weights: w.to_vec() }));
    out
}

type Key = (Vec<u64>, u32, Vec<u64>);

/// Memoizing evaluator for the recursive bound D.
///
/// The cache is keyed on the full `(exponent prefix, multiplicity, size
/// prefix)` tuple, so one evaluator can be reused across a whole sweep.
#[derive(Debug, Default)]
pub struct DEvaluator {
    cache: HashMap<Key, BigUint>,
}

impl DEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    pub fn d(&mut self, params: &BoundParams) -> BigUint {
        self.eval(params.exponents(), params.multiplicity(), params.sizes())
    }

    /// D together with the lexicographically smallest maximizing weight
    /// tuple of the outermost recursion step (`None` when `m = 1`).
    pub fn d_with_argmax(&mut self, params: &BoundParams) -> (BigUint, Option<CompositionTuple>) {
        let (exps, r, sizes) = (params.exponents(), params.multiplicity(), params.sizes());
        if exps.len() == 1 {
            return (BigUint::from(d_base(exps[0], r, sizes[0])), None);
        }
        let m = exps.len();
        let inner = self.inner_values(&exps[..m - 1], r, &sizes[..m - 1]);
        let full = product(&sizes[..m - 1]);
        let mut best: Option<(BigUint, Vec<u64>)> = None;
        for_each_in_a(exps[m - 1], r, sizes[m - 1], |u| {
            let value = step_value(u, sizes[m - 1], &inner, &full);
            // strict comparison keeps the first (lexicographically smallest) maximizer
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                best = Some((value, u.to_vec()));
            }
        });
        let (value, weights) = best.expect("A(i, r, s) always contains the zero tuple");
        (value, Some(CompositionTuple { weights }))
    }

    pub fn eval(&mut self, exps: &[u64], r: u32, sizes: &[u64]) -> BigUint {
        let m = exps.len();
        if m == 1 {
            return BigUint::from(d_base(exps[0], r, sizes[0]));
        }
        let key = (exps.to_vec(), r, sizes.to_vec());
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let inner = self.inner_values(&exps[..m - 1], r, &sizes[..m - 1]);
        let full = product(&sizes[..m - 1]);
        let mut best = BigUint::zero();
        for_each_in_a(exps[m - 1], r, sizes[m - 1], |u| {
            let value = step_value(u, sizes[m - 1], &inner, &full);
            if value > best {
                best = value;
            }
        });
        self.cache.insert(key, best.clone());
        best
    }

    /// `inner[l] = D(prefix, l)` for `l = 0..=r` (index 0 unused).
    fn inner_values(&mut self, exps: &[u64], r: u32, sizes: &[u64]) -> Vec<BigUint> {
        let mut inner = vec![BigUint::zero()];
        for l in 1..=r {
            inner.push(self.eval(exps, l, sizes));
        }
        inner
    }
}

/// `(s - sum u) D(.., r) + sum_{k<r} u_k D(.., r-k) + u_r * (s_1 ... s_{m-1})`
fn step_value(u: &[u64], size: u64, inner: &[BigUint], full: &BigUint) -> BigUint {
    let r = u.len();
    let used: u64 = u.iter().sum();
    let mut value = &inner[r] * (size - used);
    for (k, &uk) in u[..r - 1].iter().enumerate() {
        if uk != 0 {
            value += &inner[r - (k + 1)] * uk;
        }
    }
    value + full * u[r - 1]
}

/// The recursive bound D with a fresh cache.
pub fn d_recursive(params: &BoundParams) -> BigUint {
    DEvaluator::new().d(params)
}

/// Plain recursion without memoization.
pub fn d_recursive_uncached(params: &BoundParams) -> BigUint {
    fn go(exps: &[u64], r: u32, sizes: &[u64]) -> BigUint {
        let m = exps.len();
        if m == 1 {
            return BigUint::from(d_base(exps[0], r, sizes[0]));
        }
        let (head_e, head_s) = (&exps[..m - 1], &sizes[..m - 1]);
        let full = product(head_s);
        enumerate_a(exps[m - 1], r, sizes[m - 1])
            .into_iter()
            .map(|u| {
                let w = &u.weights;
                let rest = sizes[m - 1] - u.total();
                let mut value = go(head_e, r, head_s) * rest;
                for k in 1..r {
                    value += go(head_e, r - k, head_s) * w[k as usize - 1];
                }
                value + &full * w[r as usize - 1]
            })
            .max()
            .unwrap_or_default()
    }
    go(params.exponents(), params.multiplicity(), params.sizes())
}
