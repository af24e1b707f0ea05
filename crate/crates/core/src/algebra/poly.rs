//! Sparse polynomials with nonnegative integer coefficients.
//!
//! These carry rank polynomials `R(u, v)`, Hodge polynomials `H(u, v)` and
//! Poincare polynomials `P(t)`. Exponents are signed so that formal
//! substitutions such as `v = t^-1` can be represented before validation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyParseError {
    #[error("unexpected character {found:?} at position {pos}")]
    UnexpectedChar { found: char, pos: usize },
    #[error("missing exponent after '^' at position {pos}")]
    MissingExponent { pos: usize },
    #[error("empty term at position {pos}")]
    EmptyTerm { pos: usize },
    #[error("coefficient overflow at position {pos}")]
    Overflow { pos: usize },
}

/// A polynomial in `u, v`; the coefficient of `u^a v^b` is stored at `(a, b)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(i64, i64), u64>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(a: i64, b: i64, coefficient: u64) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, coefficient);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), u64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn add_term(&mut self, a: i64, b: i64, coefficient: u64) {
        if coefficient == 0 {
            return;
        }
        *self.terms.entry((a, b)).or_insert(0) += coefficient;
    }

    pub fn coefficient(&self, a: i64, b: i64) -> u64 {
        self.terms.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), u64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplication by `u^a v^b`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(x, y), &c)| ((x + a, y + b), c)).collect(),
        }
    }

    /// Value at `u = v = 1`.
    pub fn eval_at_ones(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Substitutes `u = t`, `v = t^-1`, returning the coefficient of each power of `t`.
    pub fn substitute_t_inverse_t(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for (&(a, b), &c) in &self.terms {
            *out.entry(a - b).or_insert(0) += c;
        }
        out
    }

    /// Substitutes `u = t`, `v = 1`.
    pub fn substitute_v_one(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for (&(a, _), &c) in &self.terms {
            *out.entry(a).or_insert(0) += c;
        }
        out
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(a, b), &c) in &rhs.terms {
            out.add_term(a, b, c);
        }
        out
    }
}

impl Add for BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self + &rhs
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: &str, exp: i64) -> fmt::Result {
    match exp {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        e if e < 0 => write!(f, "{var}^({e})"),
        e => write!(f, "{var}^{e}"),
    }
}

/// Graded order: total degree first, then by `u` exponent descending, so
/// `1 + u^2 + 20uv + v^2` reads the way the families are usually written.
fn display_order(p: &BivariatePolynomial) -> Vec<((i64, i64), u64)> {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by_key(|&((a, b), _)| (a + b, -a, b));
    terms
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in display_order(self).into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c != 1 || (a == 0 && b == 0) {
                write!(f, "{c}")?;
            }
            write_power(f, "u", a)?;
            write_power(f, "v", b)?;
        }
        Ok(())
    }
}

impl FromStr for BivariatePolynomial {
    type Err = PolyParseError;

    /// Parses sums of terms like `20uv`, `u^2v^2`, `3`, in the variables `u` and `v`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut poly = BivariatePolynomial::zero();
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;

        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let read_int = |pos: &mut usize| -> Result<Option<u64>, PolyParseError> {
            let start = *pos;
            let mut value: u64 = 0;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                let d = chars[*pos].to_digit(10).unwrap() as u64;
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(d))
                    .ok_or(PolyParseError::Overflow { pos: start })?;
                *pos += 1;
            }
            Ok((*pos > start).then_some(value))
        };

        skip_ws(&mut pos);
        if pos == chars.len() {
            return Err(PolyParseError::EmptyTerm { pos });
        }
        loop {
            skip_ws(&mut pos);
            let term_start = pos;
            let coefficient = read_int(&mut pos)?;
            let (mut a, mut b) = (0i64, 0i64);
            let mut saw_var = false;
            loop {
                skip_ws(&mut pos);
                let Some(&ch) = chars.get(pos) else { break };
                if ch == '*' {
                    pos += 1;
                    continue;
                }
                if ch != 'u' && ch != 'v' {
                    break;
                }
                pos += 1;
                saw_var = true;
                let mut exp = 1i64;
                if chars.get(pos) == Some(&'^') {
                    pos += 1;
                    exp = read_int(&mut pos)?.ok_or(PolyParseError::MissingExponent { pos })? as i64;
                }
                if ch == 'u' {
                    a += exp;
                } else {
                    b += exp;
                }
            }
            if coefficient.is_none() && !saw_var {
                return Err(match chars.get(pos) {
                    Some(&found) => PolyParseError::UnexpectedChar { found, pos },
                    None => PolyParseError::EmptyTerm { pos: term_start },
                });
            }
            poly.add_term(a, b, coefficient.unwrap_or(1));
            skip_ws(&mut pos);
            match chars.get(pos) {
                None => break,
                Some('+') => pos += 1,
                Some(&found) => return Err(PolyParseError::UnexpectedChar { found, pos }),
            }
        }
        Ok(poly)
    }
}

impl Serialize for BivariatePolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<[i64; 3]> = self.terms.iter().map(|(&(a, b), &c)| [a, b, c as i64]).collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BivariatePolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<(i64, i64, u64)> = Vec::deserialize(deserializer)?;
        Ok(Self::from_terms(rows.into_iter().map(|(a, b, c)| ((a, b), c))))
    }
}

/// A polynomial in one variable `t` with nonnegative exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct UnivariatePolynomial {
    terms: BTreeMap<u32, u64>,
}

impl UnivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coefficients(coefficients: &[u64]) -> Self {
        Self::from_terms(coefficients.iter().enumerate().map(|(i, &c)| (i as u32, c)))
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: u32, coefficient: u64) {
        if coefficient > 0 {
            *self.terms.entry(exponent).or_insert(0) += coefficient;
        }
    }

    pub fn coefficient(&self, exponent: u32) -> u64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// `P(1)`.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// `P(-1)`.
    pub fn alternating_sum(&self) -> i64 {
        self.terms
            .iter()
            .map(|(&e, &c)| if e % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c != 1 || e == 0 {
                write!(f, "{c}")?;
            }
            write_power(f, "t", e as i64)?;
        }
        Ok(())
    }
}

impl Serialize for UnivariatePolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<[u64; 2]> = self.terms.iter().map(|(&e, &c)| [e as u64, c]).collect();
        rows.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_k3_hodge() {
        let h: BivariatePolynomial = "1 + u^2 + v^2 + 20uv + u^2v^2".parse().unwrap();
        assert_eq!(h.coefficient(1, 1), 20);
        assert_eq!(h.coefficient(2, 2), 1);
        assert_eq!(h.coefficient(0, 0), 1);
        assert_eq!(h.eval_at_ones(), 24);
        assert_eq!(h.to_string(), "1 + u^2 + 20uv + v^2 + u^2v^2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1 + x".parse::<BivariatePolynomial>().is_err());
        assert!("u^".parse::<BivariatePolynomial>().is_err());
        assert!("".parse::<BivariatePolynomial>().is_err());
        assert!("1 +".parse::<BivariatePolynomial>().is_err());
    }

    #[test]
    fn parse_repeated_terms_accumulate() {
        let h: BivariatePolynomial = "uv + 2*u*v + 3".parse().unwrap();
        assert_eq!(h.coefficient(1, 1), 3);
        assert_eq!(h.coefficient(0, 0), 3);
    }

    #[test]
    fn substitution() {
        let r = BivariatePolynomial::from_terms([((0, 0), 1), ((2, 1), 1), ((4, 2), 1)]);
        let sub = r.substitute_t_inverse_t();
        assert_eq!(sub, BTreeMap::from([(0, 1), (1, 1), (2, 1)]));
        assert_eq!(r.shift(2, 1).coefficient(6, 3), 1);
    }

    #[test]
    fn univariate_sums() {
        let p = UnivariatePolynomial::from_coefficients(&[2, 20, 2]);
        assert_eq!(p.total(), 24);
        assert_eq!(p.alternating_sum(), -16);
        assert_eq!(p.to_string(), "2 + 20t + 2t^2");
        assert_eq!(p.degree(), Some(2));
    }
}
