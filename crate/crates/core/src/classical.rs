//! Pearson pairs on the bi-lattice: regularity, closed-form recurrence
//! coefficients, iterated pairs, derived functionals and the functional
//! Rodrigues formula.
//!
//! A [`PearsonPair`] is the data `(φ, ψ, γ)` with `deg φ ≤ 2`,
//! `deg ψ ≤ 1`, governing the functional equation `D(φu) = S(ψu)`.
//! Writing `φ = az² + bz + c`, `ψ = dz + e` and
//!
//! ```text
//! d_n = a n + d,   e_n = b n + e,
//! ```
//!
//! the functional `u` is regular precisely when `d_n ≠ 0` and
//! `φ(-e_n/d_{2n}) + n d_n ≠ 0` for every `n`, and in that case the monic
//! OPS satisfies the three-term recurrence with
//!
//! ```text
//! B_n     = n e_{n-1} / d_{2n-2} - (n+1) e_n / d_{2n},
//! C_{n+1} = -(n+1) d_{n-1} / (d_{2n-1} d_{2n+1}) · (φ(-e_n/d_{2n}) + n d_n),
//! ```
//!
//! all of which are γ-free. (`e_n` uses the linear coefficient of `φ`,
//! i.e. `e_n = φ'(0) n + ψ(0)` — the same thing.) The `n = 0` instances
//! are evaluated in their cancelled forms `B_0 = -e/d` and
//! `C_1 = -φ(-e/d)/d_1`, which is also how the formulas avoid the spurious
//! `d_{-1}` of the general expressions.

use serde::Serialize;
use thiserror::Error;

use crate::functional::{
    solve_pearson_moments_with, FunctionalError, MomentFunctional, SigmaConvention,
};
use crate::poly::Poly;
use crate::recurrence::{RecurrenceError, RecurrenceTable};
use crate::scalar::ExactScalar;
use crate::sigma::{LatticeContext, SigmaPoly, SigmaScalar};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ClassicalError {
    #[error("functional is not regular: {0}")]
    NotRegular(RegularityVerdict),
    #[error("sigma residue did not cancel in t_{n}")]
    SigmaResidue { n: usize },
    #[error(transparent)]
    Functional(#[from] FunctionalError),
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
}

/// Outcome of the finite-horizon regularity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RegularityVerdict {
    /// Both regularity conditions hold for `0 ≤ n ≤ checked_to` (with the
    /// admissibility condition checked through `2·checked_to`, which the
    /// second condition divides by).
    Regular { checked_to: usize },
    /// `d_n = 0`: the pair is not admissible at `n`.
    NotAdmissible { n: usize },
    /// `φ(-e_n/d_{2n}) + n d_n = 0`, equivalently `C_{n+1} = 0`.
    SecondConditionZero { n: usize },
}

impl RegularityVerdict {
    pub fn is_regular(&self) -> bool {
        matches!(self, RegularityVerdict::Regular { .. })
    }
}

impl std::fmt::Display for RegularityVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegularityVerdict::Regular { checked_to } => {
                write!(f, "regular up to n = {checked_to}")
            }
            RegularityVerdict::NotAdmissible { n } => {
                write!(f, "condition 1 fails at n = {n} (d_{n} = 0)")
            }
            RegularityVerdict::SecondConditionZero { n } => {
                write!(f, "condition 2 fails at n = {n} (C_{} = 0)", n + 1)
            }
        }
    }
}

/// The data `(φ, ψ, γ)` of a Pearson equation `D(φu) = S(ψu)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PearsonPair {
    phi: Poly,
    psi: Poly,
    ctx: LatticeContext,
}

impl PearsonPair {
    /// Requires `deg φ ≤ 2`, `deg ψ ≤ 1` and `(φ, ψ) ≠ (0, 0)`.
    pub fn new(phi: Poly, psi: Poly, ctx: LatticeContext) -> Self {
        assert!(
            phi.degree().map_or(true, |d| d <= 2),
            "phi must have degree at most 2"
        );
        assert!(
            psi.degree().map_or(true, |d| d <= 1),
            "psi must have degree at most 1"
        );
        assert!(
            !phi.is_zero() || !psi.is_zero(),
            "(phi, psi) must not both be zero"
        );
        PearsonPair { phi, psi, ctx }
    }

    pub fn phi(&self) -> &Poly {
        &self.phi
    }

    pub fn psi(&self) -> &Poly {
        &self.psi
    }

    pub fn context(&self) -> &LatticeContext {
        &self.ctx
    }

    pub fn a(&self) -> ExactScalar {
        self.phi.coeff(2)
    }

    pub fn b(&self) -> ExactScalar {
        self.phi.coeff(1)
    }

    pub fn c(&self) -> ExactScalar {
        self.phi.coeff(0)
    }

    pub fn d(&self) -> ExactScalar {
        self.psi.coeff(1)
    }

    pub fn e(&self) -> ExactScalar {
        self.psi.coeff(0)
    }

    /// `d_n = a n + d`, defined for any integer index.
    pub fn d_n(&self, n: i64) -> ExactScalar {
        &(&self.a() * &ExactScalar::from_int(n)) + &self.d()
    }

    /// `e_n = b n + e`.
    pub fn e_n(&self, n: i64) -> ExactScalar {
        &(&self.b() * &ExactScalar::from_int(n)) + &self.e()
    }

    pub fn phi_sigma(&self) -> SigmaPoly {
        SigmaPoly::from_poly(self.phi.clone(), self.ctx.clone())
    }

    pub fn psi_sigma(&self) -> SigmaPoly {
        SigmaPoly::from_poly(self.psi.clone(), self.ctx.clone())
    }

    /// Admissibility up to the horizon: `d_n ≠ 0` for `0 ≤ n ≤ n_max`.
    /// Returns the first offending index on failure.
    pub fn admissible(&self, n_max: usize) -> Result<(), usize> {
        for n in 0..=n_max {
            if self.d_n(n as i64).is_zero() {
                return Err(n);
            }
        }
        Ok(())
    }

    /// `φ(-e_n/d_{2n}) + n d_n`, the quantity whose nonvanishing is the
    /// second regularity condition; `C_{n+1}` is a nonzero multiple of it.
    /// Requires `d_{2n} ≠ 0`.
    pub fn second_condition(&self, n: usize) -> ExactScalar {
        let n_i = n as i64;
        let arg = -&(&self.e_n(n_i) / &self.d_n(2 * n_i));
        &self.phi.eval(&arg) + &(&ExactScalar::from_int(n_i) * &self.d_n(n_i))
    }

    /// The regularity test over a finite horizon.
    pub fn regular(&self, n_max: usize) -> RegularityVerdict {
        for n in 0..=n_max {
            if self.d_n(n as i64).is_zero() {
                return RegularityVerdict::NotAdmissible { n };
            }
            if self.d_n(2 * n as i64).is_zero() {
                return RegularityVerdict::NotAdmissible { n: 2 * n };
            }
            if self.second_condition(n).is_zero() {
                return RegularityVerdict::SecondConditionZero { n };
            }
        }
        RegularityVerdict::Regular { checked_to: n_max }
    }

    /// `B_0..B_N` and `C_1..C_N` by the closed forms, without the Favard
    /// validation (zero `C` values are allowed in the output). Requires
    /// only `d_n ≠ 0` for `0 ≤ n ≤ 2N`; reports the offending index.
    pub fn raw_coefficients(
        &self,
        n_max: usize,
    ) -> Result<(Vec<ExactScalar>, Vec<ExactScalar>), usize> {
        self.admissible(2 * n_max)?;
        let mut b = Vec::with_capacity(n_max + 1);
        let mut c = Vec::with_capacity(n_max);
        b.push(-&(&self.e() / &self.d()));
        if n_max >= 1 {
            c.push(-&(&self.second_condition(0) / &self.d_n(1)));
        }
        for n in 1..=n_max as i64 {
            let nn = ExactScalar::from_int(n);
            let np1 = ExactScalar::from_int(n + 1);
            let term1 = &(&nn * &self.e_n(n - 1)) / &self.d_n(2 * n - 2);
            let term2 = &(&np1 * &self.e_n(n)) / &self.d_n(2 * n);
            b.push(&term1 - &term2);
            if n < n_max as i64 {
                let factor =
                    &(&np1 * &self.d_n(n - 1)) / &(&self.d_n(2 * n - 1) * &self.d_n(2 * n + 1));
                c.push(-&(&factor * &self.second_condition(n as usize)));
            }
        }
        Ok((b, c))
    }

    /// The validated recurrence table from the closed forms, normalized to
    /// `m_0 = 1`.
    pub fn recurrence_coeffs(&self, n_max: usize) -> Result<RecurrenceTable, ClassicalError> {
        match self.regular(n_max) {
            RegularityVerdict::Regular { .. } => {}
            verdict => return Err(ClassicalError::NotRegular(verdict)),
        }
        let (b, c) = self
            .raw_coefficients(n_max)
            .map_err(|n| ClassicalError::NotRegular(RegularityVerdict::NotAdmissible { n }))?;
        Ok(RecurrenceTable::new(ExactScalar::one(), b, c)?)
    }

    /// Moments of the Pearson solution, normalized by `m_0`.
    pub fn pearson_moments(
        &self,
        m0: SigmaScalar,
        order: usize,
    ) -> Result<MomentFunctional, FunctionalError> {
        solve_pearson_moments_with(
            &self.phi_sigma(),
            &self.psi_sigma(),
            m0,
            order,
            SigmaConvention::Linear,
        )
    }

    /// The iterated pair `(φ^[k], ψ^[k])` by the closed forms
    ///
    /// ```text
    /// ψ^[k] = (2ak + d)(z - σγ(1 - (-1)^k)) + bk + e,
    /// φ^[k] = a(z - σγ(1 - (-1)^k))² + b(z - σγ(1 - (-1)^k)) + c + k(ak + d).
    /// ```
    pub fn iterated_pair(&self, k: usize) -> IteratedPair {
        let w = self.shifted_z(k);
        let kk = ExactScalar::from_int(k as i64);
        let two_ak_d = &(&(&ExactScalar::from_int(2) * &self.a()) * &kk) + &self.d();
        let psi = &w.scale(&two_ak_d)
            + &SigmaPoly::constant(&(&self.b() * &kk) + &self.e(), self.ctx.clone());
        let const_term = &self.c() + &(&kk * &(&(&self.a() * &kk) + &self.d()));
        let phi = &(&(&w * &w).scale(&self.a()) + &w.scale(&self.b()))
            + &SigmaPoly::constant(const_term, self.ctx.clone());
        IteratedPair { k, phi, psi }
    }

    /// The same pair by the defining recursion
    /// `φ^[k+1] = S φ^[k] + D ψ^[k]`, `ψ^[k+1] = D φ^[k] + S ψ^[k]`;
    /// this is the oracle route for the closed forms above.
    pub fn iterated_pair_by_recursion(&self, k: usize) -> IteratedPair {
        let mut phi = self.phi_sigma();
        let mut psi = self.psi_sigma();
        for _ in 0..k {
            let next_phi = &phi.average() + &psi.difference();
            let next_psi = &phi.difference() + &psi.average();
            phi = next_phi;
            psi = next_psi;
        }
        IteratedPair { k, phi, psi }
    }

    /// `z - σγ(1 - (-1)^k)` as a ring element.
    fn shifted_z(&self, k: usize) -> SigmaPoly {
        let parity = if k % 2 == 0 { 0 } else { 2 };
        let odd = Poly::constant(&ExactScalar::from_int(-parity) * self.ctx.gamma());
        SigmaPoly::new(Poly::z(), odd, self.ctx.clone())
    }

    /// The derived functional `u^[k]`, built by
    /// `u^[j+1] = D(ψ^[j] u^[j]) - S(φ^[j] u^[j])`. Each step consumes two
    /// truncation orders.
    pub fn derived_functional(
        &self,
        u: &MomentFunctional,
        k: usize,
    ) -> Result<MomentFunctional, FunctionalError> {
        Ok(self.derived_functional_chain(u, k)?.pop().unwrap())
    }

    /// All of `u^[0] .. u^[k_max]` in one pass.
    pub fn derived_functional_chain(
        &self,
        u: &MomentFunctional,
        k_max: usize,
    ) -> Result<Vec<MomentFunctional>, FunctionalError> {
        let mut chain = vec![u.clone()];
        for j in 0..k_max {
            let pair_j = self.iterated_pair(j);
            let current = &chain[j];
            let d_part = current.left_mul(&pair_j.psi)?.dual_difference();
            let s_part = current.left_mul(&pair_j.phi)?.dual_average();
            chain.push(d_part.sub(&s_part));
        }
        Ok(chain)
    }

    /// The monic `P_n^[k] = (n!/(n+k)!) D^k P_{n+k}` for `n = 0..=n_max`,
    /// as ring elements. Their σ parts vanish exactly when `k` is even or
    /// γ = 0.
    pub fn derivative_ops(
        &self,
        k: usize,
        n_max: usize,
    ) -> Result<Vec<SigmaPoly>, ClassicalError> {
        let table = self.recurrence_coeffs(n_max + k)?;
        let polys = table.polynomials();
        let mut out = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut f = SigmaPoly::from_poly(polys[n + k].clone(), self.ctx.clone());
            for _ in 0..k {
                f = f.difference();
            }
            let mut denom = ExactScalar::one();
            for j in 1..=k {
                denom = &denom * &ExactScalar::from_int((n + j) as i64);
            }
            out.push(f.scale(&denom.inv()));
        }
        Ok(out)
    }

    /// The data of the functional Rodrigues formula `P_n u = k_n D^n u^[n]`:
    /// sequences `a_n`, `s_n`, `t_n`, the polynomials `R_n` generated by
    /// `R_{n+1} = (a_n z - s_n) R_n - t_n R_{n-1}`, and the constants
    /// `k_n = (-1)^n Π_{j=1..n} d_{n+j-2}^{-1}`, so that `P_n = k_n R_n`.
    ///
    /// `t_n` is evaluated in the ring, where `φ^[n-1]` is taken at the
    /// σ-bearing point `σγ(1 + (-1)^n) - e_{n-1}/d_{2n-2}`; the σ part of
    /// the value cancels identically, and a nonzero residue would be
    /// reported as an error rather than projected away.
    pub fn rodrigues(&self, n_max: usize) -> Result<RodriguesData, ClassicalError> {
        match self.regular(n_max) {
            RegularityVerdict::Regular { .. } => {}
            verdict => return Err(ClassicalError::NotRegular(verdict)),
        }
        let mut a_seq = vec![-&self.d()];
        let mut s_seq = vec![self.e()];
        let mut t_seq = Vec::new();
        for n in 1..=n_max as i64 {
            let a_n = -&(&(&self.d_n(2 * n) * &self.d_n(2 * n - 1)) / &self.d_n(n - 1));
            let b_n = {
                let nn = ExactScalar::from_int(n);
                let np1 = ExactScalar::from_int(n + 1);
                let term1 = &(&nn * &self.e_n(n - 1)) / &self.d_n(2 * n - 2);
                let term2 = &(&np1 * &self.e_n(n)) / &self.d_n(2 * n);
                &term1 - &term2
            };
            let s_n = &a_n * &b_n;
            // t_n = a_n (n d_{2n-2} / d_{2n-1}) φ^[n-1](σγ(1+(-1)^n) - e_{n-1}/d_{2n-2})
            let phi_prev = self.iterated_pair(n as usize - 1).phi;
            let parity = if n % 2 == 0 { 2 } else { 0 };
            let point = SigmaScalar::new(
                -&(&self.e_n(n - 1) / &self.d_n(2 * n - 2)),
                &ExactScalar::from_int(parity) * self.ctx.gamma(),
            );
            let value = phi_prev.eval_sigma(&point);
            if !value.is_sigma_free() {
                return Err(ClassicalError::SigmaResidue { n: n as usize });
            }
            let factor =
                &(&ExactScalar::from_int(n) * &self.d_n(2 * n - 2)) / &self.d_n(2 * n - 1);
            t_seq.push(&(&a_n * &factor) * &value.plain);
            a_seq.push(a_n);
            s_seq.push(s_n);
        }

        let mut r_polys = vec![Poly::one()];
        for n in 0..n_max {
            let lin = Poly::from_coeffs(vec![-&s_seq[n], a_seq[n].clone()]);
            let mut next = &lin * &r_polys[n];
            if n >= 1 {
                next = &next - &r_polys[n - 1].scale(&t_seq[n - 1]);
            }
            r_polys.push(next);
        }

        let mut k_seq = vec![ExactScalar::one()];
        for n in 1..=n_max as i64 {
            let mut prod = ExactScalar::one();
            for j in 1..=n {
                prod = &prod * &self.d_n(n + j - 2);
            }
            let sign = if n % 2 == 0 { 1 } else { -1 };
            k_seq.push(&ExactScalar::from_int(sign) / &prod);
        }

        Ok(RodriguesData {
            a: a_seq,
            s: s_seq,
            t: t_seq,
            k: k_seq,
            r: r_polys,
        })
    }
}

/// The iterated Pearson pair `(φ^[k], ψ^[k])`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IteratedPair {
    pub k: usize,
    pub phi: SigmaPoly,
    pub psi: SigmaPoly,
}

/// Data of the functional Rodrigues formula, with `P_n = k_n R_n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RodriguesData {
    /// `a_0 = -d`, then `a_n = -d_{2n} d_{2n-1} / d_{n-1}`.
    pub a: Vec<ExactScalar>,
    /// `s_0 = e`, then `s_n = a_n B_n`.
    pub s: Vec<ExactScalar>,
    /// `t_1..t_N` (the recursion needs no `t_0`).
    pub t: Vec<ExactScalar>,
    /// `k_0..k_N`.
    pub k: Vec<ExactScalar>,
    /// `R_0..R_N`.
    #[serde(rename = "R")]
    pub r: Vec<Poly>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(gamma: ExactScalar) -> LatticeContext {
        LatticeContext::new(gamma)
    }

    fn pair(phi: &str, psi: &str, gamma: ExactScalar) -> PearsonPair {
        PearsonPair::new(phi.parse().unwrap(), psi.parse().unwrap(), ctx(gamma))
    }

    fn third() -> ExactScalar {
        ExactScalar::from_ratio(1, 3)
    }

    #[test]
    fn admissibility_examples() {
        // d_n ≡ 1
        assert!(pair("z - 2", "z", third()).admissible(50).is_ok());
        // d_n = 1 - n/3 vanishes at n = 3
        assert_eq!(pair("-1/3*z^2 + 1", "z", third()).admissible(10), Err(3));
        // Q-type pair: phi = z² + a² - b² - c², psi = 2az - 2bc with a = 1/2
        // has d_n = n + 1
        let q = pair("z^2 + 1/4 - 1/9 - 1/25", "z - 2/15", third());
        assert!(q.admissible(50).is_ok());
        assert_eq!(q.d_n(0), ExactScalar::one());
    }

    #[test]
    fn regularity_examples() {
        // (z - b, z) with b ≠ 0: condition 2 equals -b for every n
        let p = pair("z - 2", "z", third());
        assert!(p.regular(20).is_regular());
        for n in 0..6 {
            assert_eq!(p.second_condition(n), ExactScalar::from_int(-2));
        }
        // (z, z): condition 2 fails at n = 0
        assert_eq!(
            pair("z", "z", ExactScalar::zero()).regular(3),
            RegularityVerdict::SecondConditionZero { n: 0 }
        );
    }

    #[test]
    fn para_krawtchouk_preimage_fails_at_d4() {
        // Q((1-5)/2, 1/4, 0) preimage: phi = z² + 4 - 1/16, psi = -4z;
        // d_n = n - 4, so admissibility is what breaks first, while the
        // second condition still holds at n = 5.
        let p = pair("z^2 + 63/16", "-4*z", third());
        assert_eq!(p.regular(8), RegularityVerdict::NotAdmissible { n: 4 });
        assert!(!p.second_condition(5).is_zero());
    }

    #[test]
    fn recurrence_h_pair() {
        // (z - 2, z) is the H(0, 2) pair: B_n = -2n, C_{n+1} = 2(n+1)
        let p = pair("z - 2", "z", third());
        let table = p.recurrence_coeffs(8).unwrap();
        for n in 0..=8 {
            assert_eq!(table.b(n), &ExactScalar::from_int(-2 * n as i64));
        }
        for n in 1..=8 {
            assert_eq!(table.c(n), &ExactScalar::from_int(2 * n as i64));
        }
    }

    #[test]
    fn c1_closed_form() {
        // C_1 = -φ(-e/d)/(d + a)
        let p = pair("2*z^2 + z - 1", "3*z + 2", third());
        let table = p.recurrence_coeffs(2).unwrap();
        let arg = -&(&p.e() / &p.d());
        let expect = -&(&p.phi().eval(&arg) / &(&p.d() + &p.a()));
        assert_eq!(table.c(1), &expect);
    }

    #[test]
    fn iterated_pair_closed_form_matches_recursion() {
        let p = pair("2*z^2 + z - 1", "3*z + 2", third());
        for k in 0..=8 {
            let closed = p.iterated_pair(k);
            let rec = p.iterated_pair_by_recursion(k);
            assert_eq!(closed.phi, rec.phi, "phi^[{k}]");
            assert_eq!(closed.psi, rec.psi, "psi^[{k}]");
        }
    }

    #[test]
    fn iterated_pair_base_case() {
        let p = pair("z - 2", "z", third());
        let base = p.iterated_pair(0);
        assert_eq!(base.phi, p.phi_sigma());
        assert_eq!(base.psi, p.psi_sigma());
    }

    #[test]
    fn psi_k_is_invariant_under_s_squared() {
        let p = pair("2*z^2 + z - 1", "3*z + 2", third());
        for k in 0..=6 {
            let psi_k = p.iterated_pair(k).psi;
            assert_eq!(psi_k.average().average(), psi_k, "S² ψ^[{k}]");
        }
    }

    #[test]
    fn derived_functional_base_and_lemma() {
        let p = pair("z - 2", "z", third());
        let u = p.pearson_moments(SigmaScalar::one(), 16).unwrap();
        // k = 0 leaves u untouched
        assert_eq!(p.derived_functional(&u, 0).unwrap(), u);
        // <D u^[1] + ψ u, z^m> = 0 (lemmaA with k = 0)
        let u1 = p.derived_functional(&u, 1).unwrap();
        let lhs = u1.dual_difference();
        let rhs = u.left_mul(&p.psi_sigma()).unwrap();
        for m in 0..=10 {
            let zm = SigmaPoly::z_pow(m, p.context().clone());
            let total = &lhs.pair(&zm).unwrap() + &rhs.pair(&zm).unwrap();
            assert!(total.is_zero(), "m = {m}: {total}");
        }
    }

    #[test]
    fn rodrigues_h_pair() {
        let p = pair("z - 2", "z", ExactScalar::from_ratio(1, 2));
        let data = p.rodrigues(6).unwrap();
        // a_0 = -d, s_0 = e, R_1 = -ψ
        assert_eq!(data.a[0], ExactScalar::from_int(-1));
        assert_eq!(data.s[0], ExactScalar::zero());
        assert_eq!(data.r[1], -p.psi());
        // P_n = k_n R_n against the recurrence route
        let polys = p.recurrence_coeffs(6).unwrap().polynomials();
        for n in 0..=6 {
            assert_eq!(data.r[n].scale(&data.k[n]), polys[n], "P_{n}");
        }
    }

    #[test]
    fn rodrigues_functional_identity() {
        // <P_n u - k_n D^n u^[n], z^m> = 0
        let p = pair("z - 2", "z", ExactScalar::from_ratio(1, 2));
        let data = p.rodrigues(4).unwrap();
        let u = p.pearson_moments(SigmaScalar::one(), 14).unwrap();
        for n in 0..=4 {
            let pn = data.r[n].scale(&data.k[n]);
            let lhs = u
                .left_mul(&SigmaPoly::from_poly(pn, p.context().clone()))
                .unwrap();
            let mut rhs = p.derived_functional(&u, n).unwrap();
            for _ in 0..n {
                rhs = rhs.dual_difference();
            }
            let rhs = rhs.scale(&SigmaScalar::from_plain(data.k[n].clone()));
            let diff = lhs.sub(&rhs);
            for m in 0..=4 {
                let zm = SigmaPoly::z_pow(m, p.context().clone());
                assert!(diff.pair(&zm).unwrap().is_zero(), "n = {n}, m = {m}");
            }
        }
    }

    #[test]
    fn derivative_ops_are_monic() {
        let p = pair("z - 2", "z", third());
        for k in 0..=2 {
            let ops = p.derivative_ops(k, 4).unwrap();
            for (n, f) in ops.iter().enumerate() {
                assert_eq!(f.even_part().degree(), Some(n), "k={k} n={n}");
                assert!(f.even_part().is_monic());
            }
            if k == 0 {
                let polys = p.recurrence_coeffs(4).unwrap().polynomials();
                for (n, f) in ops.iter().enumerate() {
                    assert_eq!(f.even_part(), &polys[n]);
                    assert!(f.is_sigma_free());
                }
            }
        }
    }
}
