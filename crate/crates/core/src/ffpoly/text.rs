//! Plain-text polynomial format.
//!
//! ```text
//! polynomial := field ':' body
//! field      := 'GF(' prime ')'
//! body       := term ('+' term)*
//! term       := factor ('*' factor)*
//! factor     := integer | 'X' index ('^' integer)?
//! ```
//!
//! Whitespace is ignored, variables are numbered from 1, integers are reduced
//! mod p and repeated variables multiply. Rendering lists terms from the
//! lex-leading one down, omits unit coefficients on non-constant terms and
//! prints the zero polynomial as `0`.

use std::fmt;

use super::{Fp, PolyError, PrimeField, SparsePolynomial};

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exps, c) in self.terms().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut parts = Vec::new();
            let constant = exps.iter().all(|&e| e == 0);
            if c.value() != 1 || constant {
                parts.push(c.value().to_string());
            }
            for (t, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("X{}", t + 1)),
                    _ => parts.push(format!("X{}^{}", t + 1, e)),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

fn parse_err(msg: impl Into<String>) -> PolyError {
    PolyError::Parse(msg.into())
}

fn parse_u64(s: &str) -> Result<u64, PolyError> {
    s.parse().map_err(|_| parse_err(format!("expected integer, found `{s}`")))
}

/// `X<index>` or `X<index>^<exp>`, returning a 0-based index.
fn parse_variable(factor: &str) -> Result<(usize, u32), PolyError> {
    let rest = factor
        .strip_prefix('X')
        .ok_or_else(|| parse_err(format!("expected variable, found `{factor}`")))?;
    let (index, exp) = match rest.split_once('^') {
        Some((i, e)) => (i, parse_u64(e)?),
        None => (rest, 1),
    };
    let index = parse_u64(index)? as usize;
    if index == 0 {
        return Err(parse_err("variables are numbered from X1"));
    }
    let exp = u32::try_from(exp).map_err(|_| parse_err("exponent too large"))?;
    Ok((index - 1, exp))
}

impl SparsePolynomial {
    /// Parses a polynomial body (no field prefix) in `nvars` variables.
    pub fn parse(text: &str, field: PrimeField, nvars: usize) -> Result<Self, PolyError> {
        let body: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if body.is_empty() {
            return Err(parse_err("empty polynomial"));
        }
        let mut out = Self::zero(field, nvars);
        for term in body.split('+') {
            if term.is_empty() {
                return Err(parse_err("empty term"));
            }
            let (coeff, vars) = parse_term(term, field)?;
            let mut exps = vec![0u32; nvars];
            for (index, e) in vars {
                if index >= nvars {
                    return Err(parse_err(format!("X{} outside {} variables", index + 1, nvars)));
                }
                exps[index] += e;
            }
            out.add_term(exps, coeff);
        }
        Ok(out)
    }

    /// Parses `GF(p): body`; the variable count is the largest index used
    /// (at least 1).
    pub fn parse_with_field(text: &str) -> Result<Self, PolyError> {
        let (head, body) = text
            .split_once(':')
            .ok_or_else(|| parse_err("expected `GF(p): <polynomial>`"))?;
        let p = head
            .trim()
            .strip_prefix("GF(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| parse_err(format!("expected `GF(p)`, found `{}`", head.trim())))?;
        let field = PrimeField::new(parse_u64(p.trim())?)?;
        let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        let mut nvars = 1;
        for term in compact.split('+') {
            for factor in term.split('*') {
                if factor.starts_with('X') {
                    nvars = nvars.max(parse_variable(factor)?.0 + 1);
                }
            }
        }
        Self::parse(&compact, field, nvars)
    }

    /// `GF(p): body`, the inverse of [`Self::parse_with_field`] whenever the
    /// last variable occurs.
    pub fn to_text(&self) -> String {
        format!("{}: {}", self.field(), self)
    }
}

fn parse_term(term: &str, field: PrimeField) -> Result<(Fp, Vec<(usize, u32)>), PolyError> {
    let mut coeff = field.one();
    let mut vars = Vec::new();
    for factor in term.split('*') {
        if factor.starts_with('X') {
            vars.push(parse_variable(factor)?);
        } else if factor.is_empty() {
            return Err(parse_err(format!("empty factor in `{term}`")));
        } else {
            coeff = coeff * field.element(parse_u64(factor)?);
        }
    }
    Ok((coeff, vars))
}
