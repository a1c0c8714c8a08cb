//! The twisted polynomial ring over a bi-lattice.
//!
//! Points of the bi-lattice are `x(s) = s + γ(1 + (-1)^s)`. Writing
//! `z = x(s)` and `σ = (-1)^s`, every function of `s` built from
//! polynomials and `(-1)^s` lives in the ring
//! `R_γ = { p(z) + σ q(z) }` with `σ² = 1`. The shift `s → s ± 1` acts by
//!
//! ```text
//! z ↦ z ± 1 - 2γσ,   σ ↦ -σ,
//! ```
//!
//! which lets the divided-difference operator `D` and the averaging
//! operator `S`,
//!
//! ```text
//! (D f)(x(s)) = [f(x(s+1)) - f(x(s-1))] / 2,
//! (S f)(x(s)) = [f(x(s+1)) + f(x(s-1))] / 2,
//! ```
//!
//! be computed exactly inside `R_γ`. The variable `s` itself is never
//! materialized. Basic identities (`D z² = 2z - 4σγ`,
//! `S z² = z² - 4σγ z + 4γ² + 1`, the product rules, ...) are pinned in
//! the test suite.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::poly::{parse_term, Poly, TextTerm};
use crate::scalar::{Cursor, ExactScalar, ParseError};

/// The bi-lattice parameter γ; fixed for the lifetime of every ring
/// element created under it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LatticeContext {
    gamma: ExactScalar,
}

impl LatticeContext {
    pub fn new(gamma: ExactScalar) -> Self {
        LatticeContext { gamma }
    }

    pub fn gamma(&self) -> &ExactScalar {
        &self.gamma
    }
}

fn check_ctx(a: &LatticeContext, b: &LatticeContext) {
    assert!(
        a == b,
        "lattice context mismatch: gamma = {} vs {}",
        a.gamma,
        b.gamma
    );
}

/// A degree-zero element of the ring: `plain + σ·sigma`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SigmaScalar {
    pub plain: ExactScalar,
    pub sigma: ExactScalar,
}

impl SigmaScalar {
    pub fn new(plain: ExactScalar, sigma: ExactScalar) -> Self {
        SigmaScalar { plain, sigma }
    }

    pub fn from_plain(plain: ExactScalar) -> Self {
        SigmaScalar {
            plain,
            sigma: ExactScalar::zero(),
        }
    }

    pub fn zero() -> Self {
        SigmaScalar::from_plain(ExactScalar::zero())
    }

    pub fn one() -> Self {
        SigmaScalar::from_plain(ExactScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.plain.is_zero() && self.sigma.is_zero()
    }

    pub fn is_sigma_free(&self) -> bool {
        self.sigma.is_zero()
    }

    /// Multiplication by σ swaps the two components (σ² = 1).
    pub fn times_sigma(&self) -> SigmaScalar {
        SigmaScalar {
            plain: self.sigma.clone(),
            sigma: self.plain.clone(),
        }
    }

    /// Inverse, when the norm `plain² - sigma²` is nonzero.
    pub fn inv(&self) -> Option<SigmaScalar> {
        let norm = &(&self.plain * &self.plain) - &(&self.sigma * &self.sigma);
        if norm.is_zero() {
            return None;
        }
        let ninv = norm.inv();
        Some(SigmaScalar {
            plain: &self.plain * &ninv,
            sigma: &(-&self.sigma) * &ninv,
        })
    }

    pub fn scale(&self, s: &ExactScalar) -> SigmaScalar {
        SigmaScalar {
            plain: &self.plain * s,
            sigma: &self.sigma * s,
        }
    }
}

impl Add<&SigmaScalar> for &SigmaScalar {
    type Output = SigmaScalar;
    fn add(self, rhs: &SigmaScalar) -> SigmaScalar {
        SigmaScalar {
            plain: &self.plain + &rhs.plain,
            sigma: &self.sigma + &rhs.sigma,
        }
    }
}

impl Sub<&SigmaScalar> for &SigmaScalar {
    type Output = SigmaScalar;
    fn sub(self, rhs: &SigmaScalar) -> SigmaScalar {
        SigmaScalar {
            plain: &self.plain - &rhs.plain,
            sigma: &self.sigma - &rhs.sigma,
        }
    }
}

impl Mul<&SigmaScalar> for &SigmaScalar {
    type Output = SigmaScalar;
    fn mul(self, rhs: &SigmaScalar) -> SigmaScalar {
        SigmaScalar {
            plain: &(&self.plain * &rhs.plain) + &(&self.sigma * &rhs.sigma),
            sigma: &(&self.plain * &rhs.sigma) + &(&self.sigma * &rhs.plain),
        }
    }
}

impl Neg for &SigmaScalar {
    type Output = SigmaScalar;
    fn neg(self) -> SigmaScalar {
        SigmaScalar {
            plain: -&self.plain,
            sigma: -&self.sigma,
        }
    }
}

impl fmt::Display for SigmaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sigma.is_zero() {
            write!(f, "{}", self.plain)
        } else {
            write!(f, "{} + s*({})", self.plain, self.sigma)
        }
    }
}

/// An element `p(z) + σ q(z)` of the twisted ring.
#[derive(Clone, PartialEq, Eq)]
pub struct SigmaPoly {
    even: Poly,
    odd: Poly,
    ctx: LatticeContext,
}

impl SigmaPoly {
    pub fn new(even: Poly, odd: Poly, ctx: LatticeContext) -> Self {
        SigmaPoly { even, odd, ctx }
    }

    pub fn from_poly(even: Poly, ctx: LatticeContext) -> Self {
        SigmaPoly {
            even,
            odd: Poly::zero(),
            ctx,
        }
    }

    pub fn zero(ctx: LatticeContext) -> Self {
        SigmaPoly::from_poly(Poly::zero(), ctx)
    }

    pub fn one(ctx: LatticeContext) -> Self {
        SigmaPoly::from_poly(Poly::one(), ctx)
    }

    pub fn constant(c: ExactScalar, ctx: LatticeContext) -> Self {
        SigmaPoly::from_poly(Poly::constant(c), ctx)
    }

    /// The monomial `z^k`.
    pub fn z_pow(k: usize, ctx: LatticeContext) -> Self {
        SigmaPoly::from_poly(Poly::monomial(ExactScalar::one(), k), ctx)
    }

    pub fn even_part(&self) -> &Poly {
        &self.even
    }

    pub fn odd_part(&self) -> &Poly {
        &self.odd
    }

    pub fn context(&self) -> &LatticeContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn is_sigma_free(&self) -> bool {
        self.odd.is_zero()
    }

    /// `max(deg p, deg q)`, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        match (self.even.degree(), self.odd.degree()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn scale(&self, s: &ExactScalar) -> SigmaPoly {
        SigmaPoly {
            even: self.even.scale(s),
            odd: self.odd.scale(s),
            ctx: self.ctx.clone(),
        }
    }

    /// Multiplication by σ: swaps the even and odd parts.
    pub fn times_sigma(&self) -> SigmaPoly {
        SigmaPoly {
            even: self.odd.clone(),
            odd: self.even.clone(),
            ctx: self.ctx.clone(),
        }
    }

    /// `D z^k` and `S z^k` for `k = 0..=n_max`, computed incrementally
    /// from the powers of `z ± 1 - 2γσ` (one ring multiplication per
    /// step instead of a full Horner evaluation per monomial).
    pub fn monomial_images(ctx: &LatticeContext, n_max: usize) -> Vec<(SigmaPoly, SigmaPoly)> {
        let shift = |t: i64| {
            SigmaPoly::new(
                Poly::from_coeffs(vec![ExactScalar::from_int(t), ExactScalar::one()]),
                Poly::constant(&ExactScalar::from_int(-2) * ctx.gamma()),
                ctx.clone(),
            )
        };
        let (w_plus, w_minus) = (shift(1), shift(-1));
        let half = ExactScalar::from_ratio(1, 2);
        let mut plus_pow = SigmaPoly::one(ctx.clone());
        let mut minus_pow = SigmaPoly::one(ctx.clone());
        let mut out = Vec::with_capacity(n_max + 1);
        for k in 0..=n_max {
            if k > 0 {
                plus_pow = &plus_pow * &w_plus;
                minus_pow = &minus_pow * &w_minus;
            }
            let d = (&plus_pow - &minus_pow).scale(&half);
            let s = (&plus_pow + &minus_pow).scale(&half);
            out.push((d, s));
        }
        out
    }

    /// Value of `f` one lattice step away: substitutes
    /// `z ↦ z + t - 2γσ` and `σ ↦ -σ` (`t = ±1`).
    fn translated(&self, t: i64) -> SigmaPoly {
        let ctx = self.ctx.clone();
        // w = z + t - 2γσ
        let shift = SigmaPoly::new(
            Poly::from_coeffs(vec![ExactScalar::from_int(t), ExactScalar::one()]),
            Poly::constant(&ExactScalar::from_int(-2) * ctx.gamma()),
            ctx.clone(),
        );
        let horner = |p: &Poly| {
            let mut acc = SigmaPoly::zero(ctx.clone());
            for c in p.coeffs().iter().rev() {
                acc = &(&acc * &shift) + &SigmaPoly::constant(c.clone(), ctx.clone());
            }
            acc
        };
        let even_at = horner(&self.even);
        let odd_at = horner(&self.odd);
        &even_at - &odd_at.times_sigma()
    }

    /// The divided-difference operator `D`.
    pub fn difference(&self) -> SigmaPoly {
        self.difference_and_average().0
    }

    /// The averaging operator `S`.
    pub fn average(&self) -> SigmaPoly {
        self.difference_and_average().1
    }

    /// `(D f, S f)` from a single pass over the two translations.
    pub fn difference_and_average(&self) -> (SigmaPoly, SigmaPoly) {
        let plus = self.translated(1);
        let minus = self.translated(-1);
        let half = ExactScalar::from_ratio(1, 2);
        (
            (&plus - &minus).scale(&half),
            (&plus + &minus).scale(&half),
        )
    }

    /// Evaluation at a σ-scalar point: `p(w) + σ q(w)`.
    pub fn eval_sigma(&self, w: &SigmaScalar) -> SigmaScalar {
        let horner = |p: &Poly| {
            let mut acc = SigmaScalar::zero();
            for c in p.coeffs().iter().rev() {
                acc = &(&acc * w) + &SigmaScalar::from_plain(c.clone());
            }
            acc
        };
        &horner(&self.even) + &horner(&self.odd).times_sigma()
    }

    /// Row `n` of the Leibniz coefficient table: the polynomials
    /// `T(n,0)f ... T(n,n)f` defined by `T(0,0)f = f` and
    /// `T(n,k)f = S T(n-1,k)f + D T(n-1,k-1)f`, so that
    /// `D^n(f u) = Σ_k T(n,k)f · D^{n-k} S^k u`.
    pub fn leibniz_row(&self, n: usize) -> Vec<SigmaPoly> {
        let mut row = vec![self.clone()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(row.len() + 1);
            for k in 0..=row.len() {
                let mut t = SigmaPoly::zero(self.ctx.clone());
                if k < row.len() {
                    t = &t + &row[k].average();
                }
                if k > 0 {
                    t = &t + &row[k - 1].difference();
                }
                next.push(t);
            }
            row = next;
        }
        row
    }

    /// `T(n,k)f`, with the convention that it vanishes for `k > n`.
    pub fn leibniz_coefficient(&self, n: usize, k: usize) -> SigmaPoly {
        if k > n {
            return SigmaPoly::zero(self.ctx.clone());
        }
        self.leibniz_row(n).swap_remove(k)
    }
}

impl Add<&SigmaPoly> for &SigmaPoly {
    type Output = SigmaPoly;
    fn add(self, rhs: &SigmaPoly) -> SigmaPoly {
        check_ctx(&self.ctx, &rhs.ctx);
        SigmaPoly {
            even: &self.even + &rhs.even,
            odd: &self.odd + &rhs.odd,
            ctx: self.ctx.clone(),
        }
    }
}

impl Sub<&SigmaPoly> for &SigmaPoly {
    type Output = SigmaPoly;
    fn sub(self, rhs: &SigmaPoly) -> SigmaPoly {
        check_ctx(&self.ctx, &rhs.ctx);
        SigmaPoly {
            even: &self.even - &rhs.even,
            odd: &self.odd - &rhs.odd,
            ctx: self.ctx.clone(),
        }
    }
}

impl Mul<&SigmaPoly> for &SigmaPoly {
    type Output = SigmaPoly;
    fn mul(self, rhs: &SigmaPoly) -> SigmaPoly {
        check_ctx(&self.ctx, &rhs.ctx);
        // (p1 + σq1)(p2 + σq2) = (p1p2 + q1q2) + σ(p1q2 + q1p2)
        SigmaPoly {
            even: &(&self.even * &rhs.even) + &(&self.odd * &rhs.odd),
            odd: &(&self.even * &rhs.odd) + &(&self.odd * &rhs.even),
            ctx: self.ctx.clone(),
        }
    }
}

impl Neg for &SigmaPoly {
    type Output = SigmaPoly;
    fn neg(self) -> SigmaPoly {
        SigmaPoly {
            even: -&self.even,
            odd: -&self.odd,
            ctx: self.ctx.clone(),
        }
    }
}

impl fmt::Display for SigmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.odd.is_zero() {
            return fmt::Display::fmt(&self.even, f);
        }
        if self.even.is_zero() {
            return write!(f, "s*({})", self.odd);
        }
        write!(f, "{} + s*({})", self.even, self.odd)
    }
}

impl fmt::Debug for SigmaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl SigmaPoly {
    /// Parses "c0 + c1*z + ... + s*(d0 + d1*z + ...)" in the given context.
    pub fn parse(s: &str, ctx: LatticeContext) -> Result<SigmaPoly, ParseError> {
        let mut c = Cursor::new(s);
        let mut even = Poly::zero();
        let mut odd = Poly::zero();
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
            match parse_term(&mut c, true)? {
                TextTerm::Plain(v, k) => {
                    let signed = if neg { -v } else { v };
                    even = &even + &Poly::monomial(signed, k);
                }
                TextTerm::Sigma(p) => {
                    odd = if neg { &odd - &p } else { &odd + &p };
                }
            }
            first = false;
            match c.peek() {
                Some(b'+') | Some(b'-') => continue,
                _ => break,
            }
        }
        if !c.at_end() {
            return Err(c.error("trailing input"));
        }
        Ok(SigmaPoly::new(even, odd, ctx))
    }
}

/// Serialized form of a [`SigmaPoly`]: coefficient arrays plus the lattice
/// parameter.
#[derive(Serialize, Deserialize)]
pub struct SigmaPolyRepr {
    pub even: Vec<ExactScalar>,
    pub odd: Vec<ExactScalar>,
    pub gamma: ExactScalar,
}

impl From<&SigmaPoly> for SigmaPolyRepr {
    fn from(f: &SigmaPoly) -> Self {
        SigmaPolyRepr {
            even: f.even.coeffs().to_vec(),
            odd: f.odd.coeffs().to_vec(),
            gamma: f.ctx.gamma.clone(),
        }
    }
}

impl From<SigmaPolyRepr> for SigmaPoly {
    fn from(r: SigmaPolyRepr) -> Self {
        SigmaPoly::new(
            Poly::from_coeffs(r.even),
            Poly::from_coeffs(r.odd),
            LatticeContext::new(r.gamma),
        )
    }
}

impl Serialize for SigmaPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SigmaPolyRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SigmaPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(SigmaPolyRepr::deserialize(deserializer)?.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(gamma: ExactScalar) -> LatticeContext {
        LatticeContext::new(gamma)
    }

    fn third() -> LatticeContext {
        ctx(ExactScalar::from_ratio(1, 3))
    }

    fn sp(s: &str, c: &LatticeContext) -> SigmaPoly {
        SigmaPoly::parse(s, c.clone()).unwrap()
    }

    #[test]
    fn difference_of_constant_vanishes() {
        assert!(SigmaPoly::one(third()).difference().is_zero());
    }

    #[test]
    fn average_of_constant() {
        let one = SigmaPoly::one(third());
        assert_eq!(one.average(), one);
    }

    #[test]
    fn average_of_z() {
        // S z = z - 2σγ
        let c = third();
        let got = SigmaPoly::z_pow(1, c.clone()).average();
        assert_eq!(got, sp("z - s*(2/3)", &c));
    }

    #[test]
    fn difference_of_z_squared() {
        // D z² = 2z - 4σγ
        let c = third();
        let got = SigmaPoly::z_pow(2, c.clone()).difference();
        assert_eq!(got, sp("2*z - s*(4/3)", &c));
    }

    #[test]
    fn average_of_z_squared() {
        // S z² = z² - 4σγ z + 4γ² + 1
        let c = third();
        let got = SigmaPoly::z_pow(2, c.clone()).average();
        assert_eq!(got, sp("z^2 + 13/9 - s*(4/3*z)", &c));
    }

    #[test]
    fn difference_drops_degree_by_one() {
        let c = third();
        for n in 1..=9 {
            let d = SigmaPoly::z_pow(n, c.clone()).difference();
            assert_eq!(d.even_part().degree(), Some(n - 1));
            assert_eq!(
                d.even_part().leading().unwrap(),
                &ExactScalar::from_int(n as i64)
            );
        }
    }

    #[test]
    fn average_preserves_degree_and_leading() {
        let c = third();
        for n in 0..=9 {
            let s = SigmaPoly::z_pow(n, c.clone()).average();
            assert_eq!(s.even_part().degree(), Some(n));
            assert!(s.even_part().is_monic());
        }
    }

    #[test]
    fn leibniz_base_case_and_convention() {
        let c = third();
        let f = sp("z^2 - 1", &c);
        assert_eq!(f.leibniz_coefficient(0, 0), f);
        assert!(f.leibniz_coefficient(2, 3).is_zero());
    }

    #[test]
    fn leibniz_t_n2_is_constant() {
        // T(n,2) f = n(n-1) a for f = a z² + b z + c
        let c = ctx(ExactScalar::from_ratio(1, 2));
        let f = sp("3*z^2 + z - 5", &c);
        for n in 2..=6 {
            let t = f.leibniz_coefficient(n, 2);
            let expect = ExactScalar::from_int((n * (n - 1)) as i64 * 3);
            assert_eq!(t, SigmaPoly::constant(expect, c.clone()));
        }
    }

    #[test]
    fn difference_powers_commute_with_average() {
        // D^n S f = S D^n f
        let c = third();
        let f = sp("z^4 - 2*z^2 + s*(z^3 + i*z)", &c);
        let sf = f.average();
        let mut dnf = f;
        let mut dnsf = sf;
        for _ in 1..=4 {
            dnf = dnf.difference();
            dnsf = dnsf.difference();
            assert_eq!(dnsf, dnf.average());
        }
    }

    #[test]
    fn sigma_scalar_inverse() {
        let x = SigmaScalar::new(ExactScalar::from_int(3), ExactScalar::from_int(2));
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, SigmaScalar::one());
        // norm zero: 1 + σ has no inverse
        let y = SigmaScalar::new(ExactScalar::one(), ExactScalar::one());
        assert!(y.inv().is_none());
    }

    #[test]
    fn parse_display_round_trip() {
        let c = third();
        let f = sp("z^3 - 1/2*z + s*(2*z^2 - i)", &c);
        let again = SigmaPoly::parse(&f.to_string(), c).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    #[should_panic(expected = "lattice context mismatch")]
    fn context_mismatch_panics() {
        let a = SigmaPoly::one(third());
        let b = SigmaPoly::one(ctx(ExactScalar::zero()));
        let _ = &a + &b;
    }
}
