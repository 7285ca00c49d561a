use std::collections::BTreeMap;
use std::fmt;

use super::{Fp, PolyError, PrimeField};

/// Multiplicity of a zero; the zero polynomial has infinite multiplicity
/// everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u64> {
        match self {
            Self::Finite(v) => Some(v),
            Self::Infinite => None,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v}"),
            Self::Infinite => f.write_str("infinity"),
        }
    }
}

/// `binom(n, k) mod p`, via Pascal's rule on residues.
///
/// Pascal's rule only adds, so reducing at every step gives the same residue
/// as reducing the exact integer coefficient. This stays correct when
/// `p <= n`, where many coefficients vanish.
pub fn binomial_mod(n: u64, k: u64, field: PrimeField) -> Fp {
    if k > n {
        return field.zero();
    }
    let k = k.min(n - k) as usize;
    let mut row = vec![field.zero(); k + 1];
    row[0] = field.one();
    for i in 1..=n as usize {
        for j in (1..=k.min(i)).rev() {
            row[j] = row[j] + row[j - 1];
        }
    }
    row[k]
}

/// Row `n` of Pascal's triangle mod p.
fn binomial_row(n: u32, field: PrimeField) -> Vec<Fp> {
    let mut row = vec![field.one()];
    for _ in 0..n {
        let mut next = vec![field.one(); row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row
}

/// A polynomial in `m` variables over `GF(p)`, stored as a map from exponent
/// vectors to non-zero coefficients.
///
/// Map keys are ordered lexicographically with `X_1` most significant, so the
/// last key is the leading monomial for `X_m < ... < X_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Fp>,
}

impl SparsePolynomial {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Self { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: PrimeField, nvars: usize, value: u64) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(vec![0; nvars], field.element(value));
        p
    }

    /// `X_{index+1}` (0-based index).
    pub fn variable(field: PrimeField, nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        let mut p = Self::zero(field, nvars);
        p.add_term(exps, field.one());
        p
    }

    pub fn from_terms<I>(field: PrimeField, nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, u64)>,
    {
        let mut p = Self::zero(field, nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(PolyError::DimensionMismatch { expected: nvars, got: exps.len() });
            }
            p.add_term(exps, field.element(c));
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, exps: Vec<u32>, c: Fp) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = *o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], Fp)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> Fp {
        self.terms.get(exps).copied().unwrap_or_else(|| self.field.zero())
    }

    /// Lex-leading exponent vector with `X_m < ... < X_1`.
    pub fn leading_monomial(&self) -> Option<&[u32]> {
        self.terms.keys().next_back().map(Vec::as_slice)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Smallest total degree of a term; the order of vanishing at the origin.
    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        if self.nvars != other.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, got: other.nvars });
        }
        Ok(())
    }

    fn check_point(&self, point: &[Fp]) -> Result<(), PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, got: point.len() });
        }
        if let Some(bad) = point.iter().find(|a| a.modulus() != self.field.modulus()) {
            return Err(PolyError::FieldMismatch { left: self.field.modulus(), right: bad.modulus() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-self.field.one())
    }

    pub fn scale(&self, c: Fp) -> Self {
        let mut out = Self::zero(self.field, self.nvars);
        for (e, &v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.field, self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Fp]) -> Result<Fp, PolyError> {
        self.check_point(point)?;
        let mut acc = self.field.zero();
        for (e, &c) in &self.terms {
            let mut v = c;
            for (a, &k) in point.iter().zip(e) {
                v = v * a.pow(u64::from(k));
            }
            acc = acc + v;
        }
        Ok(acc)
    }

    /// `F(X_1 + a_1, ..., X_m + a_m)`, shifting one variable at a time.
    pub fn translate(&self, shift: &[Fp]) -> Result<Self, PolyError> {
        self.check_point(shift)?;
        let mut current = self.clone();
        for (t, &a) in shift.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut next = Self::zero(self.field, self.nvars);
            let mut rows: BTreeMap<u32, Vec<Fp>> = BTreeMap::new();
            for (e, &c) in &current.terms {
                let n = e[t];
                let row = rows.entry(n).or_insert_with(|| binomial_row(n, self.field));
                // (X + a)^n = sum_j binom(n, j) a^(n-j) X^j
                let mut a_pow = self.field.one();
                for j in (0..=n).rev() {
                    let mut exps = e.clone();
                    exps[t] = j;
                    next.add_term(exps, c * row[j as usize] * a_pow);
                    a_pow = a_pow * a;
                }
            }
            current = next;
        }
        Ok(current)
    }

    /// The `k`-th Hasse derivative: the `Z^k` coefficient of `F(X + Z)`.
    pub fn hasse_derivative(&self, k: &[u32]) -> Result<Self, PolyError> {
        if k.len() != self.nvars {
            return Err(PolyError::DimensionMismatch { expected: self.nvars, got: k.len() });
        }
        let mut out = Self::zero(self.field, self.nvars);
        for (e, &c) in &self.terms {
            if e.iter().zip(k).any(|(ei, ki)| ei < ki) {
                continue;
            }
            let mut coeff = c;
            for (&ei, &ki) in e.iter().zip(k) {
                coeff = coeff * binomial_mod(u64::from(ei), u64::from(ki), self.field);
            }
            let exps = e.iter().zip(k).map(|(ei, ki)| ei - ki).collect();
            out.add_term(exps, coeff);
        }
        Ok(out)
    }

    /// Multiplicity at `point`: the minimum total degree of `F(X + point)`.
    pub fn multiplicity(&self, point: &[Fp]) -> Result<Multiplicity, PolyError> {
        self.check_point(point)?;
        if self.is_zero() {
            return Ok(Multiplicity::Infinite);
        }
        let shifted = self.translate(point)?;
        let d = shifted.min_total_degree().expect("translation preserves non-zero polynomials");
        Ok(Multiplicity::Finite(u64::from(d)))
    }

    /// Multiplicity as the smallest `|k|` with `F^(k)(point) != 0`, by direct
    /// evaluation of Hasse derivatives. Slower than [`Self::multiplicity`].
    pub fn multiplicity_by_hasse(&self, point: &[Fp]) -> Result<Multiplicity, PolyError> {
        self.check_point(point)?;
        let Some(degree) = self.total_degree() else {
            return Ok(Multiplicity::Infinite);
        };
        for order in 0..=degree {
            let mut found = false;
            for_each_composition(order, self.nvars, &mut |k| {
                if !found {
                    let deriv = self.hasse_derivative(k).expect("dimension checked");
                    found = !deriv.evaluate(point).expect("dimension checked").is_zero();
                }
            });
            if found {
                return Ok(Multiplicity::Finite(u64::from(order)));
            }
        }
        unreachable!("the derivative of order deg F is a non-zero constant")
    }
}

/// Calls `visit` on every `k` in N^parts with `k_1 + ... + k_parts = total`.
fn for_each_composition(total: u32, parts: usize, visit: &mut dyn FnMut(&[u32])) {
    fn walk(pos: usize, left: u32, k: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if pos + 1 == k.len() {
            k[pos] = left;
            visit(k);
            return;
        }
        for v in 0..=left {
            k[pos] = v;
            walk(pos + 1, left - v, k, visit);
        }
    }
    if parts == 0 {
        if total == 0 {
            visit(&[]);
        }
        return;
    }
    let mut k = vec![0; parts];
    walk(0, total, &mut k, visit);
}
