use rayon::prelude::*;

use super::{Fp, Multiplicity, PolyError, PrimeField, SparsePolynomial};

/// A Cartesian product `S_1 x ... x S_m` of finite subsets of a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    sets: Vec<Vec<Fp>>,
}

impl Grid {
    pub fn new(sets: Vec<Vec<Fp>>) -> Result<Self, PolyError> {
        for (u, set) in sets.iter().enumerate() {
            for (v, a) in set.iter().enumerate() {
                if set[..v].contains(a) {
                    return Err(PolyError::DuplicatePoint { var: u + 1, point: a.value() });
                }
            }
        }
        Ok(Self { sets })
    }

    /// `S_u = {0, 1, ..., s_u - 1}` in `field`.
    pub fn initial_segments(field: PrimeField, sizes: &[u64]) -> Result<Self, PolyError> {
        if let Some(&s) = sizes.iter().find(|&&s| s > field.modulus()) {
            return Err(PolyError::IndexOutOfRange { var: 0, index: s as usize, len: field.modulus() as usize });
        }
        Self::new(sizes.iter().map(|&s| (0..s).map(|v| field.element(v)).collect()).collect())
    }

    pub fn sets(&self) -> &[Vec<Fp>] {
        &self.sets
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.sets.iter().map(|s| s.len() as u64).collect()
    }

    pub fn num_points(&self) -> u64 {
        self.sets.iter().map(|s| s.len() as u64).product()
    }

    /// Every grid point, last coordinate varying fastest.
    pub fn points(&self) -> Vec<Vec<Fp>> {
        let mut out = vec![Vec::with_capacity(self.sets.len())];
        for set in &self.sets {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    set.iter().map(move |&a| {
                        let mut p = prefix.clone();
                        p.push(a);
                        p
                    })
                })
                .collect();
        }
        out
    }
}

fn multiplicities(f: &SparsePolynomial, grid: &Grid) -> Result<Vec<u64>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::InfiniteSum);
    }
    if grid.sets().len() != f.num_vars() {
        return Err(PolyError::DimensionMismatch { expected: f.num_vars(), got: grid.sets().len() });
    }
    grid.points()
        .par_iter()
        .map(|a| match f.multiplicity(a)? {
            Multiplicity::Finite(v) => Ok(v),
            Multiplicity::Infinite => Err(PolyError::InfiniteSum),
        })
        .collect()
}

/// Sum of `mult(F, a)` over the grid.
pub fn grid_multiplicity_sum(f: &SparsePolynomial, grid: &Grid) -> Result<u64, PolyError> {
    Ok(multiplicities(f, grid)?.into_iter().sum())
}

/// Number of grid points where `F` vanishes to order at least `r`.
pub fn grid_count_mult_at_least(f: &SparsePolynomial, grid: &Grid, r: u64) -> Result<u64, PolyError> {
    Ok(multiplicities(f, grid)?.into_iter().filter(|&v| v >= r).count() as u64)
}
