use super::{Fp, PolyError, PrimeField, SparsePolynomial};

/// Multiplicity profile of a product of univariate linear factors
/// `prod_u prod_v (X_u - alpha_v^(u))^(r_v^(u))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpec {
    field: PrimeField,
    /// `factors[u]` lists `(alpha, r)` pairs for variable `X_{u+1}`.
    factors: Vec<Vec<(Fp, u32)>>,
}

impl FactorSpec {
    pub fn new(field: PrimeField, factors: Vec<Vec<(Fp, u32)>>) -> Result<Self, PolyError> {
        for (u, list) in factors.iter().enumerate() {
            for (v, &(alpha, _)) in list.iter().enumerate() {
                if alpha.modulus() != field.modulus() {
                    return Err(PolyError::FieldMismatch { left: field.modulus(), right: alpha.modulus() });
                }
                if list[..v].iter().any(|&(b, _)| b == alpha) {
                    return Err(PolyError::DuplicatePoint { var: u + 1, point: alpha.value() });
                }
            }
        }
        Ok(Self { field, factors })
    }

    /// Pairs each grid point of `grid_sets[u]` with `profiles[u][v]`.
    pub fn from_profiles(
        field: PrimeField,
        grid_sets: &[Vec<Fp>],
        profiles: &[Vec<u32>],
    ) -> Result<Self, PolyError> {
        if grid_sets.len() != profiles.len() {
            return Err(PolyError::DimensionMismatch { expected: grid_sets.len(), got: profiles.len() });
        }
        let factors = grid_sets
            .iter()
            .zip(profiles)
            .map(|(set, prof)| {
                if set.len() < prof.len() {
                    return Err(PolyError::DimensionMismatch { expected: set.len(), got: prof.len() });
                }
                Ok(set.iter().copied().zip(prof.iter().copied()).collect())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, factors)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Vec<(Fp, u32)>] {
        &self.factors
    }

    /// `(sum_v r_v^(1), ..., sum_v r_v^(m))`, the lex-leading exponent of the product.
    pub fn leading_exponent(&self) -> Vec<u64> {
        self.factors
            .iter()
            .map(|list| list.iter().map(|&(_, r)| u64::from(r)).sum())
            .collect()
    }

    /// Expands the product into a sparse polynomial.
    pub fn build_product(&self) -> SparsePolynomial {
        let m = self.num_vars();
        let field = self.field;
        // dense univariate expansion per variable, then the outer product
        let univariate: Vec<Vec<Fp>> = self
            .factors
            .iter()
            .map(|list| {
                let mut coeffs = vec![field.one()];
                for &(alpha, r) in list {
                    for _ in 0..r {
                        let mut next = vec![field.zero(); coeffs.len() + 1];
                        for (d, &c) in coeffs.iter().enumerate() {
                            next[d + 1] = next[d + 1] + c;
                            next[d] = next[d] - c * alpha;
                        }
                        coeffs = next;
                    }
                }
                coeffs
            })
            .collect();
        let mut out = SparsePolynomial::constant(field, m, 1);
        for (u, coeffs) in univariate.iter().enumerate() {
            let mut next = SparsePolynomial::zero(field, m);
            for (e, c) in out.terms() {
                for (d, &cu) in coeffs.iter().enumerate() {
                    let mut exps = e.to_vec();
                    exps[u] = d as u32;
                    next.add_term(exps, c * cu);
                }
            }
            out = next;
        }
        out
    }

    /// `r_{j_1}^(1) + ... + r_{j_m}^(m)`, with `j_u` indexing `factors()[u]`.
    pub fn product_multiplicity(&self, indices: &[usize]) -> Result<u64, PolyError> {
        if indices.len() != self.num_vars() {
            return Err(PolyError::DimensionMismatch { expected: self.num_vars(), got: indices.len() });
        }
        let mut total = 0;
        for (u, (&j, list)) in indices.iter().zip(&self.factors).enumerate() {
            let &(_, r) = list
                .get(j)
                .ok_or(PolyError::IndexOutOfRange { var: u + 1, index: j, len: list.len() })?;
            total += u64::from(r);
        }
        Ok(total)
    }

    /// Multiplicity at an arbitrary point; coordinates that are not among the
    /// listed roots contribute 0.
    pub fn product_multiplicity_at(&self, point: &[Fp]) -> Result<u64, PolyError> {
        if point.len() != self.num_vars() {
            return Err(PolyError::DimensionMismatch { expected: self.num_vars(), got: point.len() });
        }
        Ok(point
            .iter()
            .zip(&self.factors)
            .map(|(a, list)| list.iter().find(|(b, _)| b == a).map_or(0, |&(_, r)| u64::from(r)))
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::Multiplicity;

    #[test]
    fn build_examples() {
        let f = PrimeField::new(7).unwrap();
        let spec = FactorSpec::new(f, vec![vec![(f.zero(), 1)]]).unwrap();
        assert_eq!(spec.build_product(), SparsePolynomial::variable(f, 1, 0));

        // (X - 1)^2 (X - 2)^2 = X^4 + X^3 + 6 X^2 + 2 X + 4 over GF(7)
        let spec = FactorSpec::new(f, vec![vec![(f.element(1), 2), (f.element(2), 2)]]).unwrap();
        let expected = SparsePolynomial::from_terms(
            f,
            1,
            vec![(vec![4], 1), (vec![3], 1), (vec![2], 6), (vec![1], 2), (vec![0], 4)],
        )
        .unwrap();
        assert_eq!(spec.build_product(), expected);

        let empty = FactorSpec::new(f, vec![vec![], vec![]]).unwrap();
        assert_eq!(empty.build_product(), SparsePolynomial::constant(f, 2, 1));
    }

    #[test]
    fn duplicate_points_rejected() {
        let f = PrimeField::new(7).unwrap();
        let err = FactorSpec::new(f, vec![vec![(f.element(3), 1), (f.element(3), 2)]]).unwrap_err();
        assert_eq!(err, PolyError::DuplicatePoint { var: 1, point: 3 });
    }

    #[test]
    fn leading_exponent_matches_expansion() {
        let f = PrimeField::new(7).unwrap();
        let pts: Vec<Fp> = f.elements().take(5).collect();
        let spec = FactorSpec::from_profiles(f, &[pts.clone(), pts], &[vec![2, 0, 1], vec![1, 1, 1, 3]]).unwrap();
        assert_eq!(spec.leading_exponent(), vec![3, 6]);
        assert_eq!(spec.build_product().leading_monomial(), Some(&[3u32, 6][..]));
    }

    #[test]
    fn product_multiplicity_example() {
        let f = PrimeField::new(7).unwrap();
        let pts: Vec<Fp> = f.elements().take(5).collect();
        let spec = FactorSpec::from_profiles(
            f,
            &[pts.clone(), pts.clone()],
            &[vec![2, 2, 2, 2, 0], vec![1, 1, 1, 1, 1]],
        )
        .unwrap();
        assert_eq!(spec.product_multiplicity(&[1, 1]).unwrap(), 3);
        assert_eq!(spec.product_multiplicity(&[4, 0]).unwrap(), 1);
        assert!(spec.product_multiplicity(&[5, 0]).is_err());
        // 6 is not a listed root of X_1
        assert_eq!(spec.product_multiplicity_at(&[f.element(6), f.element(0)]).unwrap(), 1);

        let poly = spec.build_product();
        for (j1, &a) in pts.iter().enumerate() {
            for (j2, &b) in pts.iter().enumerate() {
                assert_eq!(
                    poly.multiplicity(&[a, b]).unwrap(),
                    Multiplicity::Finite(spec.product_multiplicity(&[j1, j2]).unwrap())
                );
            }
        }

        let flat = FactorSpec::from_profiles(f, &[pts.clone(), pts], &[vec![0; 5], vec![0; 5]]).unwrap();
        assert_eq!(flat.product_multiplicity(&[2, 3]).unwrap(), 0);
    }
}
