//! Dense univariate polynomials over [`ExactScalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{Cursor, ExactScalar, ParseError};

/// A polynomial `c0 + c1*z + ... + cn*z^n`, trailing zeros normalized away.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<ExactScalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(ExactScalar::one())
    }

    pub fn z() -> Self {
        Poly::monomial(ExactScalar::one(), 1)
    }

    pub fn constant(c: ExactScalar) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: ExactScalar, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ExactScalar::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().map_or(false, ExactScalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn leading(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, ExactScalar::is_one)
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn scale(&self, s: &ExactScalar) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &ExactScalar::from_int(k as i64))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Multiplication by `z^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ExactScalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs =
            vec![ExactScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Text format: "c0 + c1*z + c2*z^2 + ...". Coefficients are scalar atoms,
// parenthesized when they carry several terms, e.g. "(1+i)*z^2 - 1/2*z + 3".
// ---------------------------------------------------------------------------

fn coeff_needs_parens(s: &str) -> bool {
    s.contains('+') || s[1..].contains('-') || s.contains("sqrt")
}

pub(crate) fn fmt_term(c: &ExactScalar, k: usize, lead: bool, out: &mut String) {
    let mut body = c.to_string();
    let mut neg = false;
    if !coeff_needs_parens(&body) {
        if let Some(stripped) = body.strip_prefix('-') {
            neg = true;
            body = stripped.to_string();
        }
    }
    if lead {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let wrapped = if coeff_needs_parens(&body) {
        format!("({body})")
    } else {
        body.clone()
    };
    if k == 0 {
        out.push_str(&wrapped);
    } else {
        if body != "1" {
            out.push_str(&wrapped);
            out.push('*');
        }
        out.push('z');
        if k > 1 {
            out.push_str(&format!("^{k}"));
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        let mut lead = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            fmt_term(c, k, lead, &mut out);
            lead = false;
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One `coeff * z^k` style term: used by both the plain and the sigma
/// polynomial parsers.
pub(crate) enum TextTerm {
    Plain(ExactScalar, usize),
    /// `s*( ... )`: the odd part of a sigma polynomial.
    Sigma(Poly),
}

pub(crate) fn parse_term(c: &mut Cursor<'_>, allow_sigma: bool) -> Result<TextTerm, ParseError> {
    if allow_sigma && c.eat_str("s*(") {
        let inner = parse_poly_body(c, false)?;
        c.expect(b')')?;
        return Ok(TextTerm::Sigma(inner));
    }
    // coefficient: parenthesized scalar, bare scalar, or implicit 1 before z
    let coeff = if c.eat(b'(') {
        let mut depth_scalar = String::new();
        // capture the parenthesized scalar verbatim so the scalar parser
        // (which understands sqrt tails) can handle it
        let mut depth = 1usize;
        loop {
            match c.bump() {
                None => return Err(c.error("unterminated '('")),
                Some(b'(') => {
                    depth += 1;
                    depth_scalar.push('(');
                }
                Some(b')') => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                    depth_scalar.push(')');
                }
                Some(ch) => depth_scalar.push(ch as char),
            }
        }
        let v: ExactScalar = depth_scalar
            .parse()
            .map_err(|e: ParseError| c.error(format!("bad coefficient: {}", e.msg)))?;
        Some(v)
    } else if c.peek().map_or(false, |ch| ch.is_ascii_digit() || ch == b'i') {
        let g = c.gauss_atom()?;
        Some(ExactScalar::gauss(g))
    } else {
        None
    };
    let has_star = c.eat(b'*');
    if c.eat(b'z') {
        let k = if c.eat(b'^') {
            let d = c.unsigned_rational()?;
            if !d.is_integer() {
                return Err(c.error("exponent must be an integer"));
            }
            d.to_integer()
                .to_usize()
                .ok_or_else(|| c.error("exponent out of range"))?
        } else {
            1
        };
        Ok(TextTerm::Plain(coeff.unwrap_or_else(ExactScalar::one), k))
    } else if has_star {
        Err(c.error("expected 'z' after '*'"))
    } else {
        match coeff {
            Some(v) => Ok(TextTerm::Plain(v, 0)),
            None => Err(c.error("expected a term")),
        }
    }
}

pub(crate) fn parse_poly_body(
    c: &mut Cursor<'_>,
    allow_sigma: bool,
) -> Result<Poly, ParseError> {
    // Only used for sigma-free bodies; the sigma-aware driver lives in the
    // sigma module.
    debug_assert!(!allow_sigma);
    let mut acc = Poly::zero();
    let mut first = true;
    loop {
        let neg = if c.eat(b'-') {
            true
        } else if c.eat(b'+') {
            false
        } else if first {
            false
        } else {
            break;
        };
        let term = parse_term(c, false)?;
        let TextTerm::Plain(v, k) = term else {
            unreachable!()
        };
        let signed = if neg { -v } else { v };
        acc = &acc + &Poly::monomial(signed, k);
        first = false;
        match c.peek() {
            Some(b'+') | Some(b'-') => continue,
            _ => break,
        }
    }
    Ok(acc)
}

impl FromStr for Poly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut c = Cursor::new(s);
        let p = parse_poly_body(&mut c, false)?;
        if !c.at_end() {
            return Err(c.error("trailing input"));
        }
        Ok(p)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Poly::from_coeffs(Vec::deserialize(deserializer)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_eval() {
        let f = p("z^2 - 3*z + 1");
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.eval(&ExactScalar::from_int(2)), ExactScalar::from_int(-1));
    }

    #[test]
    fn parse_complex_coefficients() {
        let f = p("(1+i)*z + 2/5i");
        assert_eq!(f.coeff(0), ExactScalar::from_ratio(2, 5) * ExactScalar::i());
        assert_eq!(
            f.coeff(1),
            &ExactScalar::one() + &ExactScalar::i()
        );
    }

    #[test]
    fn arithmetic() {
        let f = p("z - 2");
        let g = p("z + 2");
        assert_eq!(&f * &g, p("z^2 - 4"));
        assert_eq!(&(&f + &g) - &p("2*z"), Poly::zero());
    }

    #[test]
    fn display_round_trip() {
        for s in ["z^2 - 3*z + 1", "-z^5 + 1/2", "0", "(1+i)*z^3 - i"] {
            let f = p(s);
            assert_eq!(p(&f.to_string()), f);
        }
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p("3 - 3").degree(), None);
    }
}
