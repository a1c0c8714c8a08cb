//! Exact scalar arithmetic.
//!
//! The coefficient field used everywhere in this crate is the field of
//! Gaussian rationals `Q(i)`, optionally extended by a single square root:
//! an [`ExactScalar`] is a value `base + surd * sqrt(disc)` where `base`,
//! `surd` and `disc` are Gaussian rationals. All operations are exact and
//! equality is decidable; there is no floating point anywhere.
//!
//! Extension discipline: the discriminant `disc` plays the role of an
//! arithmetic context. Scalars whose discriminants are both nonzero and
//! different must never meet in one operation (this panics, like a shape
//! mismatch would in a linear-algebra crate). A scalar with `surd == 0`
//! is context-free and combines with anything. Perfect-square discriminants
//! are collapsed on construction, so a stored nonzero `disc` is never a
//! square in `Q(i)` and the representation is canonical.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational number, re-exported as the base scalar type.
pub type Rational = BigRational;

/// Exact square root of a nonnegative rational, when one exists.
///
/// `p/q` in lowest terms is a square iff `p` and `q` are both squares.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// A Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    re: Rational,
    im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRational {
            re: Rational::from_integer(BigInt::from(n)),
            im: Rational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussRational {
            re: Rational::new(BigInt::from(num), BigInt::from(den)),
            im: Rational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re^2 + im^2`, the norm over `Q`.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        let n = self.norm_sq();
        GaussRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    /// Exact square root in `Q(i)`, when one exists.
    ///
    /// The returned root is canonical: its real part is positive, or zero
    /// with nonnegative imaginary part.
    pub fn sqrt(&self) -> Option<GaussRational> {
        if self.is_zero() {
            return Some(GaussRational::default());
        }
        let root = if self.im.is_zero() {
            if self.re.is_positive() {
                GaussRational::new(rational_sqrt(&self.re)?, Rational::zero())
            } else {
                GaussRational::new(Rational::zero(), rational_sqrt(&(-&self.re))?)
            }
        } else {
            // (u + iv)^2 = re + i*im forces u^2 = (re + |x|)/2, v = im/(2u).
            let m = rational_sqrt(&self.norm_sq())?;
            let two = Rational::from_integer(BigInt::from(2));
            let u = rational_sqrt(&((&self.re + &m) / &two))?;
            if u.is_zero() {
                return None;
            }
            let v = &self.im / &(&u * &two);
            GaussRational::new(u, v)
        };
        debug_assert_eq!(&(&root * &root), self);
        Some(if root.canonical_nonneg() { root } else { -&root })
    }

    /// The sign convention used to pick canonical square-root branches:
    /// positive real part, or zero real part with nonnegative imaginary part.
    pub fn canonical_nonneg(&self) -> bool {
        self.re.is_positive() || (self.re.is_zero() && !self.im.is_negative())
    }
}

macro_rules! gauss_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&GaussRational> for &GaussRational {
            type Output = GaussRational;
            fn $method(self, rhs: &GaussRational) -> GaussRational {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
    };
}

gauss_binop!(Add, add, |a, b| GaussRational {
    re: &a.re + &b.re,
    im: &a.im + &b.im,
});
gauss_binop!(Sub, sub, |a, b| GaussRational {
    re: &a.re - &b.re,
    im: &a.im - &b.im,
});
gauss_binop!(Mul, mul, |a, b| GaussRational {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});
// division is multiplication by the inverse
#[allow(clippy::suspicious_arithmetic_impl)]
impl Div<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn div(self, rhs: &GaussRational) -> GaussRational {
        self * &rhs.inv()
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

/// An exact complex scalar `base + surd * sqrt(disc)`.
///
/// All of the lattice parameter γ, the Pearson coefficients `a, b, c, d, e`
/// and every derived quantity in this crate are stored as this type.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    base: GaussRational,
    surd: GaussRational,
    disc: GaussRational,
}

impl ExactScalar {
    /// A pure Gaussian rational (no surd part).
    pub fn gauss(g: GaussRational) -> Self {
        ExactScalar {
            base: g,
            surd: GaussRational::default(),
            disc: GaussRational::default(),
        }
    }

    pub fn zero() -> Self {
        ExactScalar::gauss(GaussRational::default())
    }

    pub fn one() -> Self {
        ExactScalar::from_int(1)
    }

    pub fn i() -> Self {
        ExactScalar::gauss(GaussRational::i())
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::gauss(GaussRational::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        ExactScalar::gauss(GaussRational::from_ratio(num, den))
    }

    pub fn from_rational(r: Rational) -> Self {
        ExactScalar::gauss(GaussRational::new(r, Rational::zero()))
    }

    /// Builds `base + surd * sqrt(disc)`, collapsing the surd whenever
    /// `disc` is a perfect square in `Q(i)` so that representations stay
    /// canonical.
    pub fn with_surd(base: GaussRational, surd: GaussRational, disc: GaussRational) -> Self {
        if surd.is_zero() {
            return ExactScalar::gauss(base);
        }
        if let Some(root) = disc.sqrt() {
            return ExactScalar::gauss(&base + &(&surd * &root));
        }
        ExactScalar { base, surd, disc }
    }

    /// The element `sqrt(d)` itself: exact if `d` is a perfect square,
    /// otherwise the generator of the extension with discriminant `d`.
    ///
    /// `d` must be surd-free.
    pub fn sqrt_any(d: &ExactScalar) -> Self {
        assert!(
            d.surd.is_zero(),
            "extension discriminant must live in the base field"
        );
        ExactScalar::with_surd(
            GaussRational::default(),
            GaussRational::from_int(1),
            d.base.clone(),
        )
    }

    pub fn base_part(&self) -> &GaussRational {
        &self.base
    }

    pub fn surd_part(&self) -> &GaussRational {
        &self.surd
    }

    pub fn discriminant(&self) -> &GaussRational {
        &self.disc
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.surd.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.base.is_one() && self.surd.is_zero()
    }

    pub fn is_surd_free(&self) -> bool {
        self.surd.is_zero()
    }

    /// Rational value, when the scalar is a plain real rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.surd.is_zero() && self.base.im.is_zero() {
            Some(&self.base.re)
        } else {
            None
        }
    }

    fn join_disc(&self, rhs: &ExactScalar) -> GaussRational {
        if self.surd.is_zero() {
            rhs.disc.clone()
        } else if rhs.surd.is_zero() || self.disc == rhs.disc {
            self.disc.clone()
        } else {
            panic!(
                "mixed extension contexts: sqrt({}) vs sqrt({})",
                fmt_gauss(&self.disc),
                fmt_gauss(&rhs.disc)
            );
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        if self.surd.is_zero() {
            return ExactScalar::gauss(self.base.inv());
        }
        // (p + s*sqrt(D))^-1 = (p - s*sqrt(D)) / (p^2 - s^2 D); the
        // denominator is nonzero because D is never a stored square.
        let norm = &(&self.base * &self.base) - &(&(&self.surd * &self.surd) * &self.disc);
        assert!(!norm.is_zero(), "division by zero scalar");
        let ninv = norm.inv();
        ExactScalar::with_surd(&self.base * &ninv, &(-&self.surd) * &ninv, self.disc.clone())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = ExactScalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact square root of a surd-free scalar in `Q(i)`: `Some` iff the
    /// value is a perfect square there. Callers that get `None` may open
    /// an extension with [`ExactScalar::sqrt_any`].
    pub fn sqrt_exact(&self) -> Option<ExactScalar> {
        if !self.surd.is_zero() {
            return None;
        }
        self.base.sqrt().map(ExactScalar::gauss)
    }

    /// Square root of a surd-free scalar inside the extension generated by
    /// `sqrt(disc)`: either the exact Gaussian root, or `v*sqrt(disc)` when
    /// `self/disc` is a perfect square.
    pub fn sqrt_in(&self, disc: &GaussRational) -> Option<ExactScalar> {
        if let Some(r) = self.sqrt_exact() {
            return Some(r);
        }
        if self.surd.is_zero() && !disc.is_zero() {
            if let Some(v) = (&self.base / disc).sqrt() {
                return Some(ExactScalar::with_surd(
                    GaussRational::default(),
                    v,
                    disc.clone(),
                ));
            }
        }
        None
    }

    /// Square root within the scalar's own context, covering surd-bearing
    /// inputs `x0 + x1*sqrt(D)` via `u^2 = (x0 ± sqrt(x0^2 - x1^2 D))/2`.
    pub fn sqrt_same_context(&self) -> Option<ExactScalar> {
        if self.surd.is_zero() {
            return self.base.sqrt().map(ExactScalar::gauss);
        }
        let x0 = &self.base;
        let x1 = &self.surd;
        let d = &self.disc;
        let inner = &(x0 * x0) - &(&(x1 * x1) * d);
        let m = inner.sqrt()?;
        let two = GaussRational::from_int(2);
        for pm in [&(x0 + &m) / &two, &(x0 - &m) / &two] {
            if let Some(u) = pm.sqrt() {
                if !u.is_zero() {
                    let v = x1 / &(&u * &two);
                    let cand = ExactScalar::with_surd(u, v, d.clone());
                    if &(&cand * &cand) == self {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                $trait::$method(self, &rhs)
            }
        }
    };
}

impl Add<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let disc = self.join_disc(rhs);
        ExactScalar::with_surd(&self.base + &rhs.base, &self.surd + &rhs.surd, disc)
    }
}
scalar_binop!(Add, add);

impl Sub<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        let disc = self.join_disc(rhs);
        ExactScalar::with_surd(&self.base - &rhs.base, &self.surd - &rhs.surd, disc)
    }
}
scalar_binop!(Sub, sub);

impl Mul<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let disc = self.join_disc(rhs);
        let base = &(&self.base * &rhs.base) + &(&(&self.surd * &rhs.surd) * &disc);
        let surd = &(&self.base * &rhs.surd) + &(&self.surd * &rhs.base);
        ExactScalar::with_surd(base, surd, disc)
    }
}
scalar_binop!(Mul, mul);

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self * &rhs.inv()
    }
}
scalar_binop!(Div, div);

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::with_surd(-&self.base, -&self.surd, self.disc.clone())
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Text format
//
// Gaussian rationals serialize as "3/4-2/5i", "i", "-2", "1+i", and so on.
// Surd-bearing scalars as "<base>+(<surd>)*sqrt(<disc>)", e.g.
// "0+(1)*sqrt(2)" for sqrt(2). Parsing accepts exactly what Display emits
// (plus optional whitespace), so serialization round-trips byte-identically.
// ---------------------------------------------------------------------------

fn fmt_rational_term(r: &Rational, imag: bool, lead: bool, out: &mut String) {
    let neg = r.is_negative();
    let abs = r.abs();
    if lead {
        if neg {
            out.push('-');
        }
    } else {
        out.push(if neg { '-' } else { '+' });
    }
    if imag {
        if !abs.is_one() {
            out.push_str(&abs.to_string());
        }
        out.push('i');
    } else {
        out.push_str(&abs.to_string());
    }
}

fn fmt_gauss(g: &GaussRational) -> String {
    let mut out = String::new();
    if g.re.is_zero() && g.im.is_zero() {
        return "0".into();
    }
    let mut lead = true;
    if !g.re.is_zero() {
        fmt_rational_term(&g.re, false, lead, &mut out);
        lead = false;
    }
    if !g.im.is_zero() {
        fmt_rational_term(&g.im, true, lead, &mut out);
    }
    out
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_gauss(self))
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_gauss(self))
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            f.write_str(&fmt_gauss(&self.base))
        } else {
            write!(
                f,
                "{}+({})*sqrt({})",
                fmt_gauss(&self.base),
                fmt_gauss(&self.surd),
                fmt_gauss(&self.disc)
            )
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error from scalar or polynomial text parsing, with the byte offset of
/// the offending character.
#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    pub fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    pub fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    pub fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    /// unsigned rational: `digits` or `digits/digits`
    pub fn unsigned_rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.digits()?;
        if self.eat(b'/') {
            let den = self.digits()?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    /// A single unsigned term: `r`, `ri`, or `i`. This is what a bare
    /// polynomial coefficient may be; sums need parentheses there.
    pub fn gauss_atom(&mut self) -> Result<GaussRational, ParseError> {
        if self.peek().map_or(false, |c| c.is_ascii_digit()) {
            let r = self.unsigned_rational()?;
            if self.eat(b'i') {
                Ok(GaussRational::new(Rational::zero(), r))
            } else {
                Ok(GaussRational::new(r, Rational::zero()))
            }
        } else if self.eat(b'i') {
            Ok(GaussRational::i())
        } else {
            Err(self.error("expected a number"))
        }
    }

    /// Gaussian rational: sequence of signed terms `r`, `ri`, or `i`.
    ///
    /// A sign not followed by a term (e.g. the `+(` opening a surd tail)
    /// is left unconsumed.
    pub fn gauss(&mut self) -> Result<GaussRational, ParseError> {
        let mut val = GaussRational::default();
        let mut first = true;
        loop {
            let save = self.pos;
            let sign = if self.eat(b'-') {
                -1
            } else if self.eat(b'+') {
                1
            } else if first {
                1
            } else {
                break;
            };
            let mag = if self.peek().map_or(false, |c| c.is_ascii_digit()) {
                let r = self.unsigned_rational()?;
                if self.eat(b'i') {
                    GaussRational::new(Rational::zero(), r)
                } else {
                    GaussRational::new(r, Rational::zero())
                }
            } else if self.eat(b'i') {
                GaussRational::i()
            } else if first {
                return Err(self.error("expected a number"));
            } else {
                self.pos = save;
                break;
            };
            let signed = if sign < 0 { -&mag } else { mag };
            val = &val + &signed;
            first = false;
            match self.peek() {
                Some(b'+') | Some(b'-') => continue,
                _ => break,
            }
        }
        Ok(val)
    }
}

fn parse_scalar(c: &mut Cursor<'_>) -> Result<ExactScalar, ParseError> {
    // sqrt-only head: "sqrt(D)" or "-sqrt(D)"
    let save = c.pos;
    let neg = c.eat(b'-');
    if c.eat_str("sqrt(") {
        let d = c.gauss()?;
        c.expect(b')')?;
        let root = ExactScalar::sqrt_any(&ExactScalar::gauss(d));
        return Ok(if neg { -root } else { root });
    }
    c.pos = save;

    let base = c.gauss()?;
    let save = c.pos;
    // optional "+(surd)*sqrt(disc)" tail
    let sign = if c.eat(b'+') {
        1
    } else if c.eat(b'-') {
        -1
    } else {
        return Ok(ExactScalar::gauss(base));
    };
    if !c.eat(b'(') {
        c.pos = save;
        return Ok(ExactScalar::gauss(base));
    }
    let mut surd = c.gauss()?;
    c.expect(b')')?;
    c.expect(b'*')?;
    if !c.eat_str("sqrt(") {
        return Err(c.error("expected 'sqrt('"));
    }
    let disc = c.gauss()?;
    c.expect(b')')?;
    if sign < 0 {
        surd = -&surd;
    }
    Ok(ExactScalar::with_surd(base, surd, disc))
}

impl FromStr for GaussRational {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut c = Cursor::new(s);
        let g = c.gauss()?;
        if !c.at_end() {
            return Err(c.error("trailing input"));
        }
        Ok(g)
    }
}

impl FromStr for ExactScalar {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut c = Cursor::new(s);
        let v = parse_scalar(&mut c)?;
        if !c.at_end() {
            return Err(c.error("trailing input"));
        }
        Ok(v)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
