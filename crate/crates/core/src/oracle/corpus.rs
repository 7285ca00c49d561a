//! Seeded random inputs for the verification sweeps.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::ffpoly::{FactorSpec, Fp, Grid, PrimeField, SparsePolynomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `max_terms` terms with each exponent at most `max_deg`; may be zero.
pub fn random_polynomial<R: Rng>(
    rng: &mut R,
    field: PrimeField,
    nvars: usize,
    max_terms: usize,
    max_deg: u32,
) -> SparsePolynomial {
    let terms: Vec<(Vec<u32>, u64)> = (0..rng.gen_range(1..=max_terms))
        .map(|_| {
            let exps = (0..nvars).map(|_| rng.gen_range(0..=max_deg)).collect();
            (exps, rng.gen_range(0..field.modulus()))
        })
        .collect();
    SparsePolynomial::from_terms(field, nvars, terms).expect("term arity matches")
}

/// A random polynomial with known multiplicity at a random point: every
/// term of `G` has total degree at least `order`, and the result is
/// `G(X - a)`, so the multiplicity at `a` is the least degree of `G`.
pub fn polynomial_with_zero<R: Rng>(
    rng: &mut R,
    field: PrimeField,
    nvars: usize,
    max_deg: u32,
) -> (SparsePolynomial, Vec<Fp>, u32) {
    let order = rng.gen_range(0..=max_deg.min(4));
    let mut g = random_polynomial(rng, field, nvars, 8, max_deg);
    let low: Vec<Vec<u32>> = g
        .terms()
        .filter(|(e, _)| e.iter().sum::<u32>() < order)
        .map(|(e, _)| e.to_vec())
        .collect();
    if !low.is_empty() {
        let keep: Vec<(Vec<u32>, u64)> = g
            .terms()
            .filter(|(e, _)| e.iter().sum::<u32>() >= order)
            .map(|(e, c)| (e.to_vec(), c.value()))
            .collect();
        g = SparsePolynomial::from_terms(field, nvars, keep).expect("term arity matches");
    }
    let point: Vec<Fp> = (0..nvars).map(|_| field.element(rng.gen_range(0..field.modulus()))).collect();
    let back: Vec<Fp> = point.iter().map(|&a| -a).collect();
    let f = g.translate(&back).expect("point arity matches");
    let expected = g.min_total_degree().unwrap_or(0);
    (f, point, expected)
}

/// Random exponents on a random subset of each grid set; the total exponent
/// per variable stays at most `max_total`.
pub fn random_factor_spec<R: Rng>(rng: &mut R, grid: &Grid, field: PrimeField, max_total: u32) -> FactorSpec {
    let factors = grid
        .sets()
        .iter()
        .map(|set| {
            let mut pts = set.clone();
            pts.shuffle(rng);
            let mut budget = rng.gen_range(0..=max_total);
            let mut list = Vec::new();
            for a in pts {
                if budget == 0 {
                    break;
                }
                let r = rng.gen_range(0..=budget);
                budget -= r;
                if r > 0 {
                    list.push((a, r));
                }
            }
            list
        })
        .collect();
    FactorSpec::new(field, factors).expect("grid sets have no duplicates")
}

/// Random non-increasing profile of length `len` summing to at most `max_total`.
pub fn random_profile<R: Rng>(rng: &mut R, len: usize, max_total: u64) -> Vec<u64> {
    let mut budget = rng.gen_range(0..=max_total);
    let mut p = vec![0; len];
    for slot in p.iter_mut() {
        let v = rng.gen_range(0..=budget);
        *slot = v;
        budget -= v;
    }
    p.sort_unstable_by(|a, b| b.cmp(a));
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::Multiplicity;

    #[test]
    fn seeded_output_is_reproducible() {
        let f = PrimeField::new(7).unwrap();
        let a = random_polynomial(&mut rng(9), f, 3, 10, 4);
        let b = random_polynomial(&mut rng(9), f, 3, 10, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn planted_zero_has_expected_order() {
        let f = PrimeField::new(5).unwrap();
        let mut r = rng(3);
        for _ in 0..50 {
            let (poly, point, order) = polynomial_with_zero(&mut r, f, 2, 5);
            if poly.is_zero() {
                continue;
            }
            assert_eq!(poly.multiplicity(&point).unwrap(), Multiplicity::Finite(u64::from(order)));
        }
    }

    #[test]
    fn factor_spec_respects_budget() {
        let f = PrimeField::new(7).unwrap();
        let grid = Grid::initial_segments(f, &[4, 5]).unwrap();
        let mut r = rng(1);
        for _ in 0..30 {
            let spec = random_factor_spec(&mut r, &grid, f, 6);
            assert!(spec.leading_exponent().iter().all(|&e| e <= 6));
        }
    }
}
