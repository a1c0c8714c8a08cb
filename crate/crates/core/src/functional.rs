//! Moment functionals and their dual difference calculus.
//!
//! A linear form `u` on the twisted ring is represented by two truncated
//! moment tables: `m_k = <u, z^k>` and `m̃_k = <u, σ z^k>`, with values in
//! the σ-scalar ring. For a functional given by plain moments the
//! commuting-scalar convention — σ passes through the pairing with
//! σ² = 1 — fixes
//! `m̃_k = σ·m_k`, and that is what [`MomentFunctional::new`] sets up. The
//! second table is not redundant once dual operators enter: since
//! `D(σf) = -σ Df`, the dual of a σ-linear functional pairs with `σ z^k`
//! through a sign flip, and iterated duals (needed by the Rodrigues
//! machinery) are faithful only if both tables are carried along.
//!
//! Truncation is explicit: asking for a moment beyond the table is an
//! error, never a silent zero.
//!
//! The dual operators are defined by `<Du, f> = -<u, Df>` and
//! `<Su, f> = <u, Sf>`.
//!
//! Two independent routes to recurrence data live here:
//! [`solve_pearson_moments`] integrates the Pearson equation
//! `D(φu) = S(ψu)` forward in the moment index, and [`hankel_oracle`]
//! recovers regularity and recurrence coefficients from raw moments by
//! Hankel determinants, with no reference to any closed form.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::recurrence::{RecurrenceError, RecurrenceTable};
use crate::scalar::ExactScalar;
use crate::sigma::{LatticeContext, SigmaPoly, SigmaScalar};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FunctionalError {
    #[error("moment truncation exceeded: need m_{needed}, table stops at m_{order}")]
    TruncationExceeded { needed: usize, order: usize },
    #[error("polynomial degree {degree} exceeds moment order {order}")]
    DegreeTooLarge { degree: usize, order: usize },
    #[error("moment m_{index} carries a nonzero sigma part")]
    SigmaContaminated { index: usize },
    #[error("admissibility fails at n = {n}: the moment relation cannot be solved")]
    NotSolvable { n: usize },
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
}

/// A moment functional over a fixed lattice context, carrying both its
/// table `m_k = <u, z^k>` and `m̃_k = <u, σ z^k>`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MomentFunctional {
    moments: Vec<SigmaScalar>,
    sigma_moments: Vec<SigmaScalar>,
    ctx: LatticeContext,
}

impl MomentFunctional {
    /// Functional with the stated moments, extended to σ-arguments by the
    /// commuting-scalar convention `<u, σ z^k> = σ·m_k`.
    pub fn new(moments: Vec<SigmaScalar>, ctx: LatticeContext) -> Self {
        assert!(!moments.is_empty(), "a moment table needs at least m_0");
        let sigma_moments = moments.iter().map(SigmaScalar::times_sigma).collect();
        MomentFunctional {
            moments,
            sigma_moments,
            ctx,
        }
    }

    /// Functional with independently specified σ-argument moments; used by
    /// the dual operators, whose results are not σ-linear.
    pub fn from_tables(
        moments: Vec<SigmaScalar>,
        sigma_moments: Vec<SigmaScalar>,
        ctx: LatticeContext,
    ) -> Self {
        assert!(!moments.is_empty(), "a moment table needs at least m_0");
        assert_eq!(moments.len(), sigma_moments.len());
        MomentFunctional {
            moments,
            sigma_moments,
            ctx,
        }
    }

    /// Functional with σ-free moments given as plain scalars.
    pub fn from_plain(moments: Vec<ExactScalar>, ctx: LatticeContext) -> Self {
        MomentFunctional::new(
            moments.into_iter().map(SigmaScalar::from_plain).collect(),
            ctx,
        )
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn context(&self) -> &LatticeContext {
        &self.ctx
    }

    pub fn moment(&self, k: usize) -> Result<&SigmaScalar, FunctionalError> {
        self.moments.get(k).ok_or(FunctionalError::TruncationExceeded {
            needed: k,
            order: self.order(),
        })
    }

    pub fn moments(&self) -> &[SigmaScalar] {
        &self.moments
    }

    pub fn sigma_moment(&self, k: usize) -> Result<&SigmaScalar, FunctionalError> {
        self.sigma_moments
            .get(k)
            .ok_or(FunctionalError::TruncationExceeded {
                needed: k,
                order: self.order(),
            })
    }

    /// `<u, p + σq> = Σ p_k m_k + Σ q_k m̃_k`.
    pub fn pair(&self, f: &SigmaPoly) -> Result<SigmaScalar, FunctionalError> {
        let deg = f.degree().unwrap_or(0);
        if deg > self.order() {
            return Err(FunctionalError::DegreeTooLarge {
                degree: deg,
                order: self.order(),
            });
        }
        let mut sum = SigmaScalar::zero();
        for (k, c) in f.even_part().coeffs().iter().enumerate() {
            sum = &sum + &self.moments[k].scale(c);
        }
        for (k, c) in f.odd_part().coeffs().iter().enumerate() {
            sum = &sum + &self.sigma_moments[k].scale(c);
        }
        Ok(sum)
    }

    /// The dual difference operator: `<Du, f> = -<u, D f>`.
    /// The truncation order is preserved.
    pub fn dual_difference(&self) -> MomentFunctional {
        self.dual_map(true)
    }

    /// The dual averaging operator: `<Su, f> = <u, S f>`.
    pub fn dual_average(&self) -> MomentFunctional {
        self.dual_map(false)
    }

    /// Both operators anti-commute with σ-multiplication
    /// (`D(σf) = -σ Df`, `S(σf) = -σ Sf`), so the σ table of the dual is
    /// the pairing with `σ·(op z^k)`, with the opposite sign of the plain
    /// table.
    fn dual_map(&self, difference: bool) -> MomentFunctional {
        let images = SigmaPoly::monomial_images(&self.ctx, self.order());
        let mut moments = Vec::with_capacity(self.order() + 1);
        let mut sigma_moments = Vec::with_capacity(self.order() + 1);
        for (d_img, s_img) in &images {
            let img = if difference { d_img } else { s_img };
            let plain = self.pair(img).expect("operator image stays in range");
            let sigma = self
                .pair(&img.times_sigma())
                .expect("operator image stays in range");
            if difference {
                moments.push(-&plain);
                sigma_moments.push(sigma);
            } else {
                moments.push(plain);
                sigma_moments.push(-&sigma);
            }
        }
        MomentFunctional {
            moments,
            sigma_moments,
            ctx: self.ctx.clone(),
        }
    }

    /// Left multiplication `f·u`: `<f u, g> = <u, f g>`. The truncation
    /// order drops by `deg f`.
    pub fn left_mul(&self, f: &SigmaPoly) -> Result<MomentFunctional, FunctionalError> {
        let deg = f.degree().unwrap_or(0);
        if deg > self.order() {
            return Err(FunctionalError::DegreeTooLarge {
                degree: deg,
                order: self.order(),
            });
        }
        let new_order = self.order() - deg;
        let shifted = |k: usize| {
            SigmaPoly::new(
                f.even_part().shift_up(k),
                f.odd_part().shift_up(k),
                self.ctx.clone(),
            )
        };
        let moments = (0..=new_order)
            .map(|k| self.pair(&shifted(k)).expect("degree bound checked above"))
            .collect();
        let sigma_moments = (0..=new_order)
            .map(|k| {
                self.pair(&shifted(k).times_sigma())
                    .expect("degree bound checked above")
            })
            .collect();
        Ok(MomentFunctional {
            moments,
            sigma_moments,
            ctx: self.ctx.clone(),
        })
    }

    /// Termwise difference of two functionals, truncated to the shorter
    /// table.
    pub fn sub(&self, rhs: &MomentFunctional) -> MomentFunctional {
        assert!(self.ctx == rhs.ctx, "lattice context mismatch");
        let order = self.order().min(rhs.order());
        MomentFunctional {
            moments: (0..=order)
                .map(|k| &self.moments[k] - &rhs.moments[k])
                .collect(),
            sigma_moments: (0..=order)
                .map(|k| &self.sigma_moments[k] - &rhs.sigma_moments[k])
                .collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn scale(&self, s: &SigmaScalar) -> MomentFunctional {
        MomentFunctional {
            moments: self.moments.iter().map(|m| m * s).collect(),
            sigma_moments: self.sigma_moments.iter().map(|m| m * s).collect(),
            ctx: self.ctx.clone(),
        }
    }

    /// All moments up to `n` as plain scalars; errors on σ contamination.
    pub fn plain_moments(&self, n: usize) -> Result<Vec<ExactScalar>, FunctionalError> {
        (0..=n)
            .map(|k| {
                let m = self.moment(k)?;
                if !m.is_sigma_free() {
                    return Err(FunctionalError::SigmaContaminated { index: k });
                }
                Ok(m.plain.clone())
            })
            .collect()
    }
}

/// Serialized moment table. Only the plain table is stored; the σ-argument
/// table is reconstructed with the σ-linear convention, which is exact for
/// every functional this crate serializes (Pearson solutions).
#[derive(Serialize, Deserialize)]
pub struct MomentRepr {
    pub m: Vec<SigmaScalar>,
    pub gamma: ExactScalar,
}

impl From<&MomentFunctional> for MomentRepr {
    fn from(u: &MomentFunctional) -> Self {
        MomentRepr {
            m: u.moments.clone(),
            gamma: u.ctx.gamma().clone(),
        }
    }
}

impl From<MomentRepr> for MomentFunctional {
    fn from(r: MomentRepr) -> Self {
        MomentFunctional::new(r.m, LatticeContext::new(r.gamma))
    }
}

/// How a functional pairs with σ-bearing arguments: `<u, σ z^k> = ±σ·m_k`.
///
/// The base bi-classical functional follows the commuting-scalar
/// reading (`Linear`). Each application of a dual operator flips the
/// parity, so the derived functionals `u^[k]` with odd `k` obey the
/// `AntiLinear` rule.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SigmaConvention {
    Linear,
    AntiLinear,
}

/// Solves the Pearson equation `D(φu) = S(ψu)` for the moments of `u`,
/// normalized by the given `m_0`, under the σ-linear convention.
///
/// Pairing the equation with `z^n` gives `<u, φ·D z^n + ψ·S z^n> = 0`;
/// the relation is re-derived from the operator module for each `n` rather
/// than hard-coding expansion coefficients. The coefficient of the newly
/// determined moment `m_{n+1}` is `d_n = (φ''/2)n + ψ'`, so the forward
/// solve succeeds exactly while the pair is admissible.
pub fn solve_pearson_moments(
    phi: &SigmaPoly,
    psi: &SigmaPoly,
    m0: SigmaScalar,
    order: usize,
) -> Result<MomentFunctional, FunctionalError> {
    solve_pearson_moments_with(phi, psi, m0, order, SigmaConvention::Linear)
}

/// [`solve_pearson_moments`] with an explicit σ-pairing convention.
///
/// `φ` and `ψ` may carry σ parts (iterated pairs do); in that case the
/// leading coefficient is inverted as a σ-scalar.
pub fn solve_pearson_moments_with(
    phi: &SigmaPoly,
    psi: &SigmaPoly,
    m0: SigmaScalar,
    order: usize,
    convention: SigmaConvention,
) -> Result<MomentFunctional, FunctionalError> {
    let ctx = phi.context().clone();
    let images = SigmaPoly::monomial_images(&ctx, order.saturating_sub(1));
    let mut moments = vec![m0];
    for n in 0..order {
        let (d_img, s_img) = &images[n];
        let relation = &(phi * d_img) + &(psi * s_img);
        // split the relation at degree n+1: lead · m_{n+1} + rest = 0
        let lead_sigma = match convention {
            SigmaConvention::Linear => relation.odd_part().coeff(n + 1),
            SigmaConvention::AntiLinear => -&relation.odd_part().coeff(n + 1),
        };
        let lead = SigmaScalar::new(relation.even_part().coeff(n + 1), lead_sigma);
        let lead_inv = lead.inv().ok_or(FunctionalError::NotSolvable { n })?;
        debug_assert!(relation.degree().map_or(true, |d| d <= n + 1));
        let mut rest = SigmaScalar::zero();
        let mut odd_rest = SigmaScalar::zero();
        for (k, m) in moments.iter().enumerate() {
            rest = &rest + &m.scale(&relation.even_part().coeff(k));
            odd_rest = &odd_rest + &m.scale(&relation.odd_part().coeff(k));
        }
        match convention {
            SigmaConvention::Linear => rest = &rest + &odd_rest.times_sigma(),
            SigmaConvention::AntiLinear => rest = &rest - &odd_rest.times_sigma(),
        }
        moments.push(&(-&rest) * &lead_inv);
    }
    match convention {
        SigmaConvention::Linear => Ok(MomentFunctional::new(moments, ctx)),
        SigmaConvention::AntiLinear => {
            let sigma_moments = moments
                .iter()
                .map(|m| -&m.times_sigma())
                .collect();
            Ok(MomentFunctional::from_tables(moments, sigma_moments, ctx))
        }
    }
}

/// Exact determinant by Gaussian elimination with column pivoting.
fn determinant(mut m: Vec<Vec<ExactScalar>>) -> ExactScalar {
    let n = m.len();
    let mut det = ExactScalar::one();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return ExactScalar::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = &det * &pivot;
        let pivot_inv = pivot.inv();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &pivot_inv;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &sub;
            }
        }
    }
    det
}

/// Result of the brute-force Hankel analysis of a moment table.
#[derive(Clone, Debug)]
pub struct HankelReport {
    /// `Δ_n = det(m_{i+j})_{i,j=0..n}` for `n = 0..=N`.
    pub deltas: Vec<ExactScalar>,
    /// First `n` with `Δ_n = 0`, if any.
    pub first_singular: Option<usize>,
    /// Recurrence table recovered from determinant ratios; present only
    /// when every `Δ_n` in range is nonzero.
    pub table: Option<RecurrenceTable>,
}

impl HankelReport {
    /// Whether all Hankel determinants up to the checked order are nonzero.
    pub fn regular(&self) -> bool {
        self.first_singular.is_none()
    }
}

/// Brute-force regularity test and recurrence recovery from raw moments.
///
/// Moments must be σ-free and available up to `m_{2N+1}`. The classical
/// determinant formulas used here are, with `Δ_n = det(m_{i+j})_{i,j=0}^n`
/// and `Δ'_n` the same determinant with its last column shifted one moment
/// up (`Δ_{-1} = 1`, `Δ'_{-1} = 0`):
///
/// ```text
/// h_n = Δ_n / Δ_{n-1},
/// C_n = Δ_n Δ_{n-2} / Δ_{n-1}²,
/// B_n = Δ'_n / Δ_n - Δ'_{n-1} / Δ_{n-1}.
/// ```
///
/// They are independent of every closed form in this crate, which is what
/// makes this the oracle side of the regularity cross-checks.
pub fn hankel_oracle(u: &MomentFunctional, n_max: usize) -> Result<HankelReport, FunctionalError> {
    let plain = u.plain_moments((2 * n_max + 1).min(u.order()))?;
    if plain.len() < 2 * n_max + 2 {
        return Err(FunctionalError::TruncationExceeded {
            needed: 2 * n_max + 1,
            order: u.order(),
        });
    }
    let hankel = |n: usize| -> Vec<Vec<ExactScalar>> {
        (0..=n)
            .map(|i| (0..=n).map(|j| plain[i + j].clone()).collect())
            .collect()
    };
    let shifted = |n: usize| -> Vec<Vec<ExactScalar>> {
        (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| {
                        let k = if j == n { i + n + 1 } else { i + j };
                        plain[k].clone()
                    })
                    .collect()
            })
            .collect()
    };

    let deltas: Vec<ExactScalar> = (0..=n_max).map(|n| determinant(hankel(n))).collect();
    let first_singular = deltas.iter().position(ExactScalar::is_zero);
    if first_singular.is_some() {
        return Ok(HankelReport {
            deltas,
            first_singular,
            table: None,
        });
    }

    let shifted_deltas: Vec<ExactScalar> =
        (0..=n_max).map(|n| determinant(shifted(n))).collect();
    let mut b = Vec::with_capacity(n_max + 1);
    let mut c = Vec::with_capacity(n_max);
    for n in 0..=n_max {
        let prev = if n == 0 {
            ExactScalar::zero()
        } else {
            &shifted_deltas[n - 1] / &deltas[n - 1]
        };
        b.push(&(&shifted_deltas[n] / &deltas[n]) - &prev);
        if n >= 1 {
            let prev_delta = if n == 1 {
                ExactScalar::one()
            } else {
                deltas[n - 2].clone()
            };
            c.push(&(&deltas[n] * &prev_delta) / &(&deltas[n - 1] * &deltas[n - 1]));
        }
    }
    let table = RecurrenceTable::new(plain[0].clone(), b, c)?;
    Ok(HankelReport {
        deltas,
        first_singular: None,
        table: Some(table),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn ctx(gamma: ExactScalar) -> LatticeContext {
        LatticeContext::new(gamma)
    }

    fn third() -> LatticeContext {
        ctx(ExactScalar::from_ratio(1, 3))
    }

    fn factorial_fixture(order: usize) -> MomentFunctional {
        let mut m = vec![ExactScalar::one()];
        for k in 1..=order {
            m.push(&m[k - 1] * &ExactScalar::from_int(k as i64));
        }
        MomentFunctional::from_plain(m, third())
    }

    #[test]
    fn pairing_is_linear() {
        let u = factorial_fixture(6);
        // <u, z^2 + 2z> = 2 + 2·1 = 4
        let f = SigmaPoly::parse("z^2 + 2*z", third()).unwrap();
        assert_eq!(
            u.pair(&f).unwrap(),
            SigmaScalar::from_plain(ExactScalar::from_int(4))
        );
        // <u, σ> = σ m_0
        let s = SigmaPoly::new(Poly::zero(), Poly::one(), third());
        assert_eq!(
            u.pair(&s).unwrap(),
            SigmaScalar::new(ExactScalar::zero(), ExactScalar::one())
        );
    }

    #[test]
    fn dual_operators_on_constants() {
        let u = factorial_fixture(6);
        let one = SigmaPoly::one(third());
        assert!(u
            .dual_difference()
            .pair(&one)
            .unwrap()
            .is_zero());
        assert_eq!(
            u.dual_average().pair(&one).unwrap(),
            SigmaScalar::one()
        );
    }

    #[test]
    fn dual_difference_squared_identity() {
        // <D²u - S²u, z^k> = -m_k
        let u = factorial_fixture(8);
        let dd = u.dual_difference().dual_difference();
        let ss = u.dual_average().dual_average();
        for k in 0..=6 {
            let zk = SigmaPoly::z_pow(k, third());
            let got = &dd.pair(&zk).unwrap() - &ss.pair(&zk).unwrap();
            assert_eq!(got, -u.moment(k).unwrap());
        }
    }

    #[test]
    fn dual_product_and_composition_rules() {
        // D(fu) = Sf·Du + Df·Su,  S(fu) = Sf·Su + Df·Du,
        // f·Du = D(Sf·u) - S(Df·u),  f·Su = S(Sf·u) - D(Df·u),
        // and D^n S u = S D^n u, all under pairing with z^m.
        let ctx = third();
        let u = {
            let phi = SigmaPoly::parse("z - 2", ctx.clone()).unwrap();
            let psi = SigmaPoly::parse("z", ctx.clone()).unwrap();
            solve_pearson_moments(&phi, &psi, SigmaScalar::one(), 12).unwrap()
        };
        let f = SigmaPoly::parse("z^2 - 1/2*z + s*(3*z + i)", ctx.clone()).unwrap();
        let (df, sf) = (f.difference(), f.average());
        let du = u.dual_difference();
        let su = u.dual_average();
        let cases = [
            (
                "D(fu)",
                u.left_mul(&f).unwrap().dual_difference(),
                du.left_mul(&sf)
                    .unwrap()
                    .sub(&su.left_mul(&df).unwrap().scale(&-&SigmaScalar::one())),
            ),
            (
                "S(fu)",
                u.left_mul(&f).unwrap().dual_average(),
                su.left_mul(&sf)
                    .unwrap()
                    .sub(&du.left_mul(&df).unwrap().scale(&-&SigmaScalar::one())),
            ),
            (
                "f·Du",
                du.left_mul(&f).unwrap(),
                u.left_mul(&sf)
                    .unwrap()
                    .dual_difference()
                    .sub(&u.left_mul(&df).unwrap().dual_average()),
            ),
            (
                "f·Su",
                su.left_mul(&f).unwrap(),
                u.left_mul(&sf)
                    .unwrap()
                    .dual_average()
                    .sub(&u.left_mul(&df).unwrap().dual_difference()),
            ),
        ];
        for (name, lhs, rhs) in &cases {
            for m in 0..=6 {
                let zm = SigmaPoly::z_pow(m, ctx.clone());
                assert_eq!(
                    lhs.pair(&zm).unwrap(),
                    rhs.pair(&zm).unwrap(),
                    "{name} at m = {m}"
                );
            }
        }
        // D^n S u = S D^n u
        let mut dn_su = su.clone();
        let mut dn_u = u.clone();
        for _ in 0..3 {
            dn_su = dn_su.dual_difference();
            dn_u = dn_u.dual_difference();
        }
        let s_dn_u = dn_u.dual_average();
        for m in 0..=6 {
            let zm = SigmaPoly::z_pow(m, ctx.clone());
            assert_eq!(dn_su.pair(&zm).unwrap(), s_dn_u.pair(&zm).unwrap());
        }
    }

    #[test]
    fn truncation_is_explicit() {
        let u = factorial_fixture(3);
        let f = SigmaPoly::z_pow(4, third());
        assert!(matches!(
            u.pair(&f),
            Err(FunctionalError::DegreeTooLarge { degree: 4, order: 3 })
        ));
        assert!(matches!(
            u.moment(9),
            Err(FunctionalError::TruncationExceeded { needed: 9, .. })
        ));
    }

    #[test]
    fn pearson_first_moments() {
        // m_1 = -(e/d) m_0 and the closed-form m_2, for a generic pair
        let c = third();
        let phi = SigmaPoly::parse("2*z^2 + z - 1", c.clone()).unwrap(); // a=2 b=1 c=-1
        let psi = SigmaPoly::parse("3*z + 2", c.clone()).unwrap(); // d=3 e=2
        let u = solve_pearson_moments(&phi, &psi, SigmaScalar::one(), 4).unwrap();
        let m1 = u.moment(1).unwrap();
        assert_eq!(m1, &SigmaScalar::from_plain(ExactScalar::from_ratio(-2, 3)));
        // m_2 = -1/(d+a) [ -(b+e) e/d + c ] m_0
        let expect = ExactScalar::from_ratio(-1, 5)
            * (&(&ExactScalar::from_int(-3) * &ExactScalar::from_ratio(2, 3))
                + &ExactScalar::from_int(-1));
        assert_eq!(u.moment(2).unwrap(), &SigmaScalar::from_plain(expect));
    }

    #[test]
    fn pearson_not_solvable_reports_index() {
        // phi = -z²/3 + 1, psi = z: d_n = 1 - n/3 vanishes at n = 3
        let c = third();
        let phi = SigmaPoly::parse("-1/3*z^2 + 1", c.clone()).unwrap();
        let psi = SigmaPoly::parse("z", c.clone()).unwrap();
        let err = solve_pearson_moments(&phi, &psi, SigmaScalar::one(), 8).unwrap_err();
        assert_eq!(err, FunctionalError::NotSolvable { n: 3 });
    }

    #[test]
    fn hankel_detects_singular_fixture() {
        // m_k = δ_{k0}: Δ_1 = m_0 m_2 - m_1² = 0
        let mut m = vec![ExactScalar::one()];
        m.extend(std::iter::repeat(ExactScalar::zero()).take(8));
        let u = MomentFunctional::from_plain(m, third());
        let report = hankel_oracle(&u, 2).unwrap();
        assert_eq!(report.first_singular, Some(1));
        assert!(report.table.is_none());
    }

    #[test]
    fn hankel_c1_matches_closed_form() {
        // (φ, ψ) = (z - b, z) with b = 2: C_1 = -φ(-e/d)/(d+a) = -φ(0) = 2
        let c = third();
        let phi = SigmaPoly::parse("z - 2", c.clone()).unwrap();
        let psi = SigmaPoly::parse("z", c.clone()).unwrap();
        let u = solve_pearson_moments(&phi, &psi, SigmaScalar::one(), 9).unwrap();
        let report = hankel_oracle(&u, 4).unwrap();
        let table = report.table.unwrap();
        assert_eq!(table.c(1), &ExactScalar::from_int(2));
    }

    #[test]
    fn sigma_contamination_is_error() {
        let m = vec![
            SigmaScalar::one(),
            SigmaScalar::new(ExactScalar::zero(), ExactScalar::one()),
            SigmaScalar::one(),
            SigmaScalar::one(),
        ];
        let u = MomentFunctional::new(m, third());
        assert_eq!(
            hankel_oracle(&u, 1).unwrap_err(),
            FunctionalError::SigmaContaminated { index: 1 }
        );
    }

    #[test]
    fn determinant_small_cases() {
        let s = ExactScalar::from_int;
        assert_eq!(determinant(vec![vec![s(5)]]), s(5));
        assert_eq!(
            determinant(vec![vec![s(1), s(2)], vec![s(3), s(4)]]),
            s(-2)
        );
        assert_eq!(
            determinant(vec![
                vec![s(0), s(1), s(2)],
                vec![s(1), s(0), s(3)],
                vec![s(4), s(5), s(6)]
            ]),
            s(16)
        );
    }
}
