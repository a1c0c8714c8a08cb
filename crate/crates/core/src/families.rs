//! The named families and the exact cross-family identities.
//!
//! Two families exhaust the classical orthogonal polynomials on the
//! bi-lattice up to affine maps:
//!
//! ```text
//! H(a, b):    B_n = -2n·sqrt(a+1),              C_{n+1} = (an + b)(n+1),
//! Q(a, b, c): B_n = (a-1)bc/((n+a)(n+a-1)),
//!             C_{n+1} = -(n+1)(n+a+b)(n+a-b)(n+a+c)(n+a-c)(n+2a-1)
//!                        / ((2n+2a-1)(n+a)²(2n+2a+1)).
//! ```
//!
//! The `n = 0` instances of the `Q` formulas are evaluated in their
//! cancelled forms `B_0 = bc/a` and
//! `C_1 = -(a+b)(a-b)(a+c)(a-c)/(a²(2a+1))`; the printed expressions have
//! removable `0/0` points there (at `a = 1` and `a = 1/2` respectively).
//!
//! Meixner, Charlier and Krawtchouk are affine images of `H`; Hahn and
//! para-Krawtchouk of `Q`. [`verify_identity`] checks those images
//! exactly at the recurrence-coefficient level, which suffices for monic
//! OPS by Favard uniqueness. Where the affine scale carries a square root
//! (Meixner, Krawtchouk), the check runs inside the corresponding
//! quadratic extension and reports both sign choices of the root.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::classical::PearsonPair;
use crate::poly::Poly;
use crate::recurrence::{RecurrenceError, RecurrenceTable};
use crate::scalar::{ExactScalar, GaussRational};
use crate::sigma::LatticeContext;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family} invariant fails at n = {n}: {what}")]
    InvariantViolation {
        family: &'static str,
        n: usize,
        what: String,
    },
    #[error("finite family: valid indices stop at n = {cutoff}, requested {requested}")]
    BeyondCutoff { cutoff: usize, requested: usize },
    #[error("square root of {value} is not representable in the current extension")]
    RootNotRepresentable { value: ExactScalar },
    #[error("affine scale must be nonzero")]
    ZeroLambda,
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
}

/// Descriptor of a named family with its exact parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FamilyDescriptor {
    H {
        a: ExactScalar,
        b: ExactScalar,
    },
    Q {
        a: ExactScalar,
        b: ExactScalar,
        c: ExactScalar,
    },
    Meixner {
        beta: ExactScalar,
        c: ExactScalar,
    },
    Charlier {
        a: ExactScalar,
    },
    Krawtchouk {
        p: ExactScalar,
        n: u64,
    },
    Hahn {
        alpha: ExactScalar,
        beta: ExactScalar,
        n: u64,
    },
    ParaKrawtchouk {
        mu: ExactScalar,
        n: u64,
    },
}

impl FamilyDescriptor {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyDescriptor::H { .. } => "H",
            FamilyDescriptor::Q { .. } => "Q",
            FamilyDescriptor::Meixner { .. } => "Meixner",
            FamilyDescriptor::Charlier { .. } => "Charlier",
            FamilyDescriptor::Krawtchouk { .. } => "Krawtchouk",
            FamilyDescriptor::Hahn { .. } => "Hahn",
            FamilyDescriptor::ParaKrawtchouk { .. } => "para-Krawtchouk",
        }
    }

    /// Named parameters, in a fixed order.
    pub fn params(&self) -> Vec<(&'static str, ExactScalar)> {
        match self {
            FamilyDescriptor::H { a, b } => vec![("a", a.clone()), ("b", b.clone())],
            FamilyDescriptor::Q { a, b, c } => {
                vec![("a", a.clone()), ("b", b.clone()), ("c", c.clone())]
            }
            FamilyDescriptor::Meixner { beta, c } => {
                vec![("beta", beta.clone()), ("c", c.clone())]
            }
            FamilyDescriptor::Charlier { a } => vec![("a", a.clone())],
            FamilyDescriptor::Krawtchouk { p, n } => {
                vec![("p", p.clone()), ("N", ExactScalar::from_int(*n as i64))]
            }
            FamilyDescriptor::Hahn { alpha, beta, n } => vec![
                ("alpha", alpha.clone()),
                ("beta", beta.clone()),
                ("N", ExactScalar::from_int(*n as i64)),
            ],
            FamilyDescriptor::ParaKrawtchouk { mu, n } => {
                vec![("mu", mu.clone()), ("N", ExactScalar::from_int(*n as i64))]
            }
        }
    }

    /// Largest valid table index for the finite families.
    pub fn cutoff(&self) -> Option<usize> {
        match self {
            FamilyDescriptor::Krawtchouk { n, .. }
            | FamilyDescriptor::Hahn { n, .. }
            | FamilyDescriptor::ParaKrawtchouk { n, .. } => Some(*n as usize),
            _ => None,
        }
    }

    /// `(B_n, C_{n+1})` straight from the defining formulas, without any
    /// validity filtering (finite families evaluate to `C = 0` at their
    /// cutoff). `disc` selects the extension used for the `H` root when
    /// `a + 1` is not a perfect square; without it a fresh extension is
    /// opened.
    pub fn raw_bc(
        &self,
        n: usize,
        disc: Option<&GaussRational>,
    ) -> Result<(ExactScalar, ExactScalar), FamilyError> {
        let nn = ExactScalar::from_int(n as i64);
        let np1 = ExactScalar::from_int(n as i64 + 1);
        let one = ExactScalar::one();
        let two = ExactScalar::from_int(2);
        match self {
            FamilyDescriptor::H { a, b } => {
                let root = sqrt_maybe_ext(&(a + &one), disc)?;
                let b_n = &(&-&two * &nn) * &root;
                let c_n = &(&(a * &nn) + b) * &np1;
                Ok((b_n, c_n))
            }
            FamilyDescriptor::Q { a, b, c } => {
                let fail = |what: &str| FamilyError::InvariantViolation {
                    family: "Q",
                    n,
                    what: what.into(),
                };
                if a.is_zero() {
                    return Err(fail("a = 0"));
                }
                let n_a = &nn + a;
                let b_numer = &(&(a - &one) * b) * c;
                let b_n = if n == 0 {
                    // cancelled form of the removable 0/0 at a = 1
                    &(b * c) / a
                } else if b_numer.is_zero() {
                    // identically zero in n; evaluation would only hit
                    // removable 0/0 points
                    ExactScalar::zero()
                } else {
                    let n_a_m1 = &n_a - &one;
                    if n_a.is_zero() || n_a_m1.is_zero() {
                        return Err(fail("(n+a)(n+a-1) = 0"));
                    }
                    &b_numer / &(&n_a * &n_a_m1)
                };
                let c_n = if n == 0 {
                    let d = &(a * a) * &(&(&two * a) + &one);
                    if d.is_zero() {
                        return Err(fail("a²(2a+1) = 0"));
                    }
                    let numer = &(&(&(a + b) * &(a - b)) * &(a + c)) * &(a - c);
                    -&(&numer / &d)
                } else {
                    let d_lo = &(&two * &n_a) - &one;
                    let d_hi = &(&two * &n_a) + &one;
                    if d_lo.is_zero() || d_hi.is_zero() {
                        return Err(fail("2n + 2a ± 1 = 0"));
                    }
                    // T = ((n+a)² - b²)((n+a)² - c²)/(n+a)², with the pole
                    // at n + a = 0 removable when b or c vanishes
                    let na_sq = &n_a * &n_a;
                    let t = if !n_a.is_zero() {
                        &(&(&na_sq - &(b * b)) * &(&na_sq - &(c * c))) / &na_sq
                    } else if c.is_zero() {
                        &na_sq - &(b * b)
                    } else if b.is_zero() {
                        &na_sq - &(c * c)
                    } else {
                        return Err(fail("n + a = 0"));
                    };
                    let rest = &(&np1 * &(&(&nn + &(&two * a)) - &one)) / &(&d_lo * &d_hi);
                    -&(&rest * &t)
                };
                Ok((b_n, c_n))
            }
            FamilyDescriptor::Meixner { beta, c } => {
                let omc = &one - c;
                if omc.is_zero() {
                    return Err(FamilyError::InvariantViolation {
                        family: "Meixner",
                        n,
                        what: "c = 1".into(),
                    });
                }
                let b_n = &(&nn + &(&(&nn + beta) * c)) / &omc;
                let c_n = &(&np1 * &(&nn + beta)) / &(&omc * &omc);
                Ok((b_n, c_n))
            }
            FamilyDescriptor::Charlier { a } => Ok((&nn + a, a * &np1)),
            FamilyDescriptor::Krawtchouk { p, n: count } => {
                let cap = ExactScalar::from_int(*count as i64);
                let b_n = &(&nn * &(&one - p)) + &(p * &(&cap - &nn));
                let c_n = &(&(p - &one) * &np1) * &(&nn - &cap);
                Ok((b_n, c_n))
            }
            FamilyDescriptor::Hahn {
                alpha,
                beta,
                n: count,
            } => {
                let fail = |what: &str| FamilyError::InvariantViolation {
                    family: "Hahn",
                    n,
                    what: what.into(),
                };
                let cap = ExactScalar::from_int(*count as i64);
                let ab = alpha + beta;
                let d0 = &(&two * &nn) + &ab;
                let d1 = &d0 + &one;
                let d2 = &d0 + &two;
                let d3 = &d0 + &ExactScalar::from_int(3);
                if d1.is_zero() {
                    return Err(fail("2n + α + β + 1 = 0"));
                }
                if d2.is_zero() {
                    return Err(fail("2n + α + β + 2 = 0"));
                }
                if d3.is_zero() {
                    return Err(fail("2n + α + β + 3 = 0"));
                }
                let t1 = &(&(&(&nn + alpha) + &one) * &(&cap - &nn)) * &(&(&nn + &ab) + &one);
                let mut b_n = &t1 / &(&d1 * &d2);
                if n > 0 {
                    if d0.is_zero() {
                        return Err(fail("2n + α + β = 0"));
                    }
                    let t2 = &(&(&nn * &(&nn + beta)) * &(&(&(&nn + &ab) + &cap) + &one))
                        / &(&d0 * &d1);
                    b_n = &b_n + &t2;
                }
                let mut numer = &np1 * &(&cap - &nn);
                numer = &numer * &(&(&nn + &ab) + &one);
                numer = &numer * &(&(&nn + alpha) + &one);
                numer = &numer * &(&(&nn + beta) + &one);
                numer = &numer * &(&(&(&nn + &ab) + &cap) + &two);
                let c_n = &numer / &(&(&d1 * &(&d2 * &d2)) * &d3);
                Ok((b_n, c_n))
            }
            FamilyDescriptor::ParaKrawtchouk { mu, n: count } => {
                let cap = ExactScalar::from_int(*count as i64);
                let b_n = &(&(&cap + mu) - &one) / &two;
                let tn = &(&two * &nn) - &cap;
                let tn2 = &tn + &two;
                if tn.is_zero() || tn2.is_zero() {
                    return Err(FamilyError::InvariantViolation {
                        family: "para-Krawtchouk",
                        n,
                        what: "2n - N vanishes (N must be odd)".into(),
                    });
                }
                let base = &(&(&two * &nn) + &one) - &cap;
                let numer = &(&(&np1 * &(&nn - &cap)) * &(&base - mu)) * &(&base + mu);
                let denom = &(&ExactScalar::from_int(4) * &tn) * &tn2;
                Ok((b_n, -&(&numer / &denom)))
            }
        }
    }

    /// The validated recurrence table `B_0..B_N`, `C_1..C_N`.
    pub fn recurrence(
        &self,
        n_max: usize,
        disc: Option<&GaussRational>,
    ) -> Result<RecurrenceTable, FamilyError> {
        if let Some(cutoff) = self.cutoff() {
            if n_max > cutoff {
                return Err(FamilyError::BeyondCutoff {
                    cutoff,
                    requested: n_max,
                });
            }
        }
        let mut b = Vec::with_capacity(n_max + 1);
        let mut c = Vec::with_capacity(n_max);
        for n in 0..=n_max {
            let (b_n, c_n) = self.raw_bc(n, disc)?;
            b.push(b_n);
            if n < n_max {
                c.push(c_n);
            }
        }
        Ok(RecurrenceTable::new(ExactScalar::one(), b, c)?)
    }

    /// The Pearson pair generating the family, for `H` and `Q`:
    /// `H(a,b) ← (sqrt(a+1)·z - b, z)` and
    /// `Q(a,b,c) ← (z² + a² - b² - c², 2az - 2bc)`. `None` for the
    /// families that are affine images rather than direct solutions.
    pub fn pearson_pair(
        &self,
        ctx: LatticeContext,
        disc: Option<&GaussRational>,
    ) -> Option<Result<PearsonPair, FamilyError>> {
        match self {
            FamilyDescriptor::H { a, b } => {
                let root = match sqrt_maybe_ext(&(a + &ExactScalar::one()), disc) {
                    Ok(r) => r,
                    Err(e) => return Some(Err(e)),
                };
                let phi = Poly::from_coeffs(vec![-b, root]);
                Some(Ok(PearsonPair::new(phi, Poly::z(), ctx)))
            }
            FamilyDescriptor::Q { a, b, c } => {
                let konst = &(a * a) - &(&(b * b) + &(c * c));
                let phi =
                    Poly::from_coeffs(vec![konst, ExactScalar::zero(), ExactScalar::one()]);
                let two = ExactScalar::from_int(2);
                let psi = Poly::from_coeffs(vec![&(&-&two * b) * c, &two * a]);
                Some(Ok(PearsonPair::new(phi, psi, ctx)))
            }
            _ => None,
        }
    }
}

fn sqrt_maybe_ext(
    v: &ExactScalar,
    disc: Option<&GaussRational>,
) -> Result<ExactScalar, FamilyError> {
    let attempt = match disc {
        Some(d) => v.sqrt_in(d),
        None if v.is_surd_free() => Some(ExactScalar::sqrt_any(v)),
        None => v.sqrt_same_context(),
    };
    attempt.ok_or_else(|| FamilyError::RootNotRepresentable { value: v.clone() })
}

/// Affine change of variable for monic orthogonal sequences: if `Q_n` has
/// coefficients `(B, C)`, then `P_n(z) = λ^n Q_n((z - μ)/λ)` is monic
/// orthogonal with `B'_n = λ B_n + μ` and `C'_n = λ² C_n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AffineMap {
    pub lambda: ExactScalar,
    pub mu: ExactScalar,
}

impl AffineMap {
    pub fn new(lambda: ExactScalar, mu: ExactScalar) -> Result<Self, FamilyError> {
        if lambda.is_zero() {
            return Err(FamilyError::ZeroLambda);
        }
        Ok(AffineMap { lambda, mu })
    }

    pub fn identity() -> Self {
        AffineMap {
            lambda: ExactScalar::one(),
            mu: ExactScalar::zero(),
        }
    }

    pub fn shift(mu: ExactScalar) -> Self {
        AffineMap {
            lambda: ExactScalar::one(),
            mu,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        AffineMap {
            lambda: self.lambda.inv(),
            mu: -&(&self.mu / &self.lambda),
        }
    }

    pub fn apply(&self, table: &RecurrenceTable) -> RecurrenceTable {
        let lambda_sq = &self.lambda * &self.lambda;
        let b = table
            .b_all()
            .iter()
            .map(|bn| &(&self.lambda * bn) + &self.mu)
            .collect();
        let c = table.c_all().iter().map(|cn| &lambda_sq * cn).collect();
        RecurrenceTable::new(table.h(0).clone(), b, c)
            .expect("affine image of a valid table is valid")
    }

    /// `(B_n, C_{n+1}) ↦ (λB_n + μ, λ²C_{n+1})` on raw values.
    pub fn apply_bc(&self, bc: (ExactScalar, ExactScalar)) -> (ExactScalar, ExactScalar) {
        (
            &(&self.lambda * &bc.0) + &self.mu,
            &(&self.lambda * &self.lambda) * &bc.1,
        )
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda = {}, mu = {}", self.lambda, self.mu)
    }
}

/// One of the five catalog identities, with its exact parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IdentityCheck {
    /// `2^n M_n(√K/2·z + βc/(1-c); β, c) = K^{n/2} H_n(z; 4/Δ, 4β/Δ)`
    /// with `Δ = (c+3)(c-1)` and `K = (c+3)/(c-1)`.
    MeixnerH { beta: ExactScalar, c: ExactScalar },
    /// `C_n(z; a) = (-2)^{-n} H_n(-2(z-a); 0, 4a)`.
    CharlierH { a: ExactScalar },
    /// `K_n(z; p, N) = k^{n/2}(-2)^{-n} H_n(-2/√k·(z - pN); 4(p-1)/k, 4(1-p)N/k)`
    /// with `k = 4(p-1)² + 1`.
    KrawtchoukH { p: ExactScalar, n: u64 },
    /// `L_n(z; α, β, N) = 2^{-n} Q_n(2z + (α-β)/2 - N; (α+β+2)/2, (α-β)/2, (α+β+2N+2)/2)`.
    HahnQ {
        alpha: ExactScalar,
        beta: ExactScalar,
        n: u64,
    },
    /// `P_n(z; μ, N) = Q_n(z - (N+μ-1)/2; (1-N)/2, μ/2, 0)`.
    ParaKrawtchoukQ { mu: ExactScalar, n: u64 },
}

impl IdentityCheck {
    pub fn id(&self) -> &'static str {
        match self {
            IdentityCheck::MeixnerH { .. } => "meixner-h",
            IdentityCheck::CharlierH { .. } => "charlier-h",
            IdentityCheck::KrawtchoukH { .. } => "krawtchouk-h",
            IdentityCheck::HahnQ { .. } => "hahn-q",
            IdentityCheck::ParaKrawtchoukQ { .. } => "para-krawtchouk-q",
        }
    }

    pub fn params(&self) -> Vec<(&'static str, ExactScalar)> {
        match self {
            IdentityCheck::MeixnerH { beta, c } => {
                vec![("beta", beta.clone()), ("c", c.clone())]
            }
            IdentityCheck::CharlierH { a } => vec![("a", a.clone())],
            IdentityCheck::KrawtchoukH { p, n } => {
                vec![("p", p.clone()), ("N", ExactScalar::from_int(*n as i64))]
            }
            IdentityCheck::HahnQ { alpha, beta, n } => vec![
                ("alpha", alpha.clone()),
                ("beta", beta.clone()),
                ("N", ExactScalar::from_int(*n as i64)),
            ],
            IdentityCheck::ParaKrawtchoukQ { mu, n } => {
                vec![("mu", mu.clone()), ("N", ExactScalar::from_int(*n as i64))]
            }
        }
    }
}

/// Per-branch outcome: the indices where the transformed tables disagree
/// (empty = identity verified on that branch).
#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    pub sign: &'static str,
    pub failures: Vec<usize>,
}

/// Outcome of one identity check.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub params: Vec<(&'static str, ExactScalar)>,
    pub checked_to: usize,
    /// One entry for rational identities, two (both root signs) for the
    /// surd-bearing ones.
    pub branches: Vec<BranchReport>,
}

impl IdentityReport {
    /// The identity holds if some branch has no failures.
    pub fn passed(&self) -> bool {
        self.branches.iter().any(|b| b.failures.is_empty())
    }

    /// Failure list of the best branch.
    pub fn failures(&self) -> &[usize] {
        self.branches
            .iter()
            .min_by_key(|b| b.failures.len())
            .map(|b| b.failures.as_slice())
            .unwrap_or(&[])
    }
}

/// Verifies one catalog identity at the recurrence level for
/// `n = 0..=n_max` (clamped to the family cutoff), exactly: the affine
/// image of the `source` table must equal the `target` table,
/// `λ B^src_n + μ = B^tgt_n` and `λ² C^src_n = C^tgt_n`.
pub fn verify_identity(
    check: &IdentityCheck,
    n_max: usize,
) -> Result<IdentityReport, FamilyError> {
    let one = ExactScalar::one();
    let two = ExactScalar::from_int(2);
    // (source family, target family, candidate maps, horizon)
    let (source, target, maps, checked_to): (
        FamilyDescriptor,
        FamilyDescriptor,
        Vec<(&'static str, AffineMap)>,
        usize,
    ) = match check {
        IdentityCheck::MeixnerH { beta, c } => {
            let delta = &(c + &ExactScalar::from_int(3)) * &(c - &one);
            if delta.is_zero() || (c - &one).is_zero() {
                return Err(FamilyError::InvariantViolation {
                    family: "Meixner",
                    n: 0,
                    what: "c ∈ {1, -3} makes the map degenerate".into(),
                });
            }
            let k_big = &delta / &(&(c - &one) * &(c - &one));
            let root_k = sqrt_maybe_ext(&k_big, None)?;
            let lambda = &two / &root_k;
            let h = FamilyDescriptor::H {
                a: &ExactScalar::from_int(4) / &delta,
                b: &(&ExactScalar::from_int(4) * beta) / &delta,
            };
            let m = FamilyDescriptor::Meixner {
                beta: beta.clone(),
                c: c.clone(),
            };
            let mu_of = |lam: &ExactScalar| -&(&(lam * &(beta * c)) / &(&one - c));
            let maps = vec![
                ("+", AffineMap::new(lambda.clone(), mu_of(&lambda))?),
                ("-", AffineMap::new(-&lambda, mu_of(&-&lambda))?),
            ];
            (m, h, maps, n_max)
        }
        IdentityCheck::CharlierH { a } => {
            let h = FamilyDescriptor::H {
                a: ExactScalar::zero(),
                b: &ExactScalar::from_int(4) * a,
            };
            let charlier = FamilyDescriptor::Charlier { a: a.clone() };
            let map = AffineMap::new(ExactScalar::from_int(-2), &two * a)?;
            (charlier, h, vec![("+", map)], n_max)
        }
        IdentityCheck::KrawtchoukH { p, n } => {
            let pm1 = p - &one;
            let k_small = &(&(&ExactScalar::from_int(4) * &pm1) * &pm1) + &one;
            let root_k = sqrt_maybe_ext(&k_small, None)?;
            let lambda = -&(&two / &root_k);
            let cap = ExactScalar::from_int(*n as i64);
            let h = FamilyDescriptor::H {
                a: &(&ExactScalar::from_int(4) * &pm1) / &k_small,
                b: &(&(&ExactScalar::from_int(4) * &(&one - p)) * &cap) / &k_small,
            };
            let kr = FamilyDescriptor::Krawtchouk { p: p.clone(), n: *n };
            let mu_of = |lam: &ExactScalar| -&(lam * &(p * &cap));
            let maps = vec![
                ("+", AffineMap::new(lambda.clone(), mu_of(&lambda))?),
                ("-", AffineMap::new(-&lambda, mu_of(&-&lambda))?),
            ];
            (kr, h, maps, n_max.min(*n as usize))
        }
        IdentityCheck::HahnQ { alpha, beta, n } => {
            let cap = ExactScalar::from_int(*n as i64);
            let ab2 = &(alpha + beta) + &two;
            let q = FamilyDescriptor::Q {
                a: &ab2 / &two,
                b: &(alpha - beta) / &two,
                c: &(&ab2 + &(&two * &cap)) / &two,
            };
            let hahn = FamilyDescriptor::Hahn {
                alpha: alpha.clone(),
                beta: beta.clone(),
                n: *n,
            };
            let mu = &(&(&two * &cap) - &(alpha - beta)) / &ExactScalar::from_int(4);
            let map = AffineMap::new(ExactScalar::from_ratio(1, 2), mu)?;
            (q, hahn, vec![("+", map)], n_max.min(*n as usize))
        }
        IdentityCheck::ParaKrawtchoukQ { mu, n } => {
            let cap = ExactScalar::from_int(*n as i64);
            let q = FamilyDescriptor::Q {
                a: &(&one - &cap) / &two,
                b: mu / &two,
                c: ExactScalar::zero(),
            };
            let pk = FamilyDescriptor::ParaKrawtchouk { mu: mu.clone(), n: *n };
            let shift = &(&(&cap + mu) - &one) / &two;
            (
                q,
                pk,
                vec![("+", AffineMap::shift(shift))],
                n_max.min(*n as usize),
            )
        }
    };

    let disc = maps
        .first()
        .map(|(_, m)| m.lambda.discriminant().clone())
        .filter(|d| !d.is_zero());
    let mut branches = Vec::new();
    for (sign, map) in maps {
        let mut failures = Vec::new();
        for n in 0..=checked_to {
            let source_bc = source.raw_bc(n, disc.as_ref())?;
            let target_bc = target.raw_bc(n, disc.as_ref())?;
            let mapped = map.apply_bc(source_bc);
            let b_ok = mapped.0 == target_bc.0;
            let c_ok = n == checked_to || mapped.1 == target_bc.1;
            if !(b_ok && c_ok) {
                failures.push(n);
            }
        }
        branches.push(BranchReport { sign, failures });
    }
    Ok(IdentityReport {
        identity: check.id(),
        params: check.params(),
        checked_to,
        branches,
    })
}

/// Exact equality of the three parameter presentations
/// `Q(a,b,c) = Q(a,c,b) = Q(a,-c,-b)`.
pub fn q_symmetry_check(
    a: &ExactScalar,
    b: &ExactScalar,
    c: &ExactScalar,
    n_max: usize,
) -> Result<bool, FamilyError> {
    let variants = [
        FamilyDescriptor::Q {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        },
        FamilyDescriptor::Q {
            a: a.clone(),
            b: c.clone(),
            c: b.clone(),
        },
        FamilyDescriptor::Q {
            a: a.clone(),
            b: -c,
            c: -b,
        },
    ];
    let reference: Vec<_> = (0..=n_max)
        .map(|n| variants[0].raw_bc(n, None))
        .collect::<Result<_, _>>()?;
    for v in &variants[1..] {
        for (n, expect) in reference.iter().enumerate() {
            if &v.raw_bc(n, None)? != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn ratio(n: i64, d: i64) -> ExactScalar {
        ExactScalar::from_ratio(n, d)
    }

    #[test]
    fn charlier_table() {
        let desc = FamilyDescriptor::Charlier { a: int(1) };
        let t = desc.recurrence(5, None).unwrap();
        for n in 0..=5 {
            assert_eq!(t.b(n), &int(n as i64 + 1));
        }
        for n in 1..=5 {
            assert_eq!(t.c(n), &int(n as i64));
        }
    }

    #[test]
    fn para_krawtchouk_constant_b() {
        let desc = FamilyDescriptor::ParaKrawtchouk {
            mu: ratio(1, 2),
            n: 5,
        };
        let t = desc.recurrence(5, None).unwrap();
        for n in 0..=5 {
            assert_eq!(t.b(n), &ratio(9, 4));
        }
        // C vanishes exactly at the cutoff
        let (_, c6) = desc.raw_bc(5, None).unwrap();
        assert!(c6.is_zero());
        assert!(matches!(
            desc.recurrence(6, None),
            Err(FamilyError::BeyondCutoff { cutoff: 5, .. })
        ));
    }

    #[test]
    fn krawtchouk_vanishes_at_cutoff() {
        let desc = FamilyDescriptor::Krawtchouk { p: ratio(1, 3), n: 4 };
        let (_, c5) = desc.raw_bc(4, None).unwrap();
        assert!(c5.is_zero());
        for n in 0..4 {
            let (_, c) = desc.raw_bc(n, None).unwrap();
            assert!(!c.is_zero());
        }
    }

    #[test]
    fn h_table_in_extension() {
        // H(1, 1): B_n = -2n·sqrt(2)
        let desc = FamilyDescriptor::H { a: int(1), b: int(1) };
        let d = GaussRational::from_int(2);
        let t = desc.recurrence(3, Some(&d)).unwrap();
        let sqrt2 = ExactScalar::sqrt_any(&int(2));
        assert_eq!(t.b(1), &(&int(-2) * &sqrt2));
        assert_eq!(t.c(2), &int(4));
    }

    #[test]
    fn q_cancelled_forms_at_n0() {
        // a = 1 and a = 1/2 are removable 0/0 points of the printed
        // formulas; the cancelled evaluations must agree with the
        // Pearson-pair route
        for (a, b, c) in [
            (int(1), ratio(1, 3), ratio(1, 5)),
            (ratio(1, 2), ratio(1, 3), ratio(1, 5)),
        ] {
            let desc = FamilyDescriptor::Q {
                a: a.clone(),
                b,
                c,
            };
            let ctx = LatticeContext::new(ratio(1, 3));
            let pair = desc.pearson_pair(ctx, None).unwrap().unwrap();
            let (b0, c1) = desc.raw_bc(0, None).unwrap();
            let table = pair.recurrence_coeffs(1).unwrap();
            assert_eq!(&b0, table.b(0), "B_0 at a = {a}");
            assert_eq!(&c1, table.c(1), "C_1 at a = {a}");
        }
    }

    #[test]
    fn affine_transform_charlier_h() {
        // λ = -1/2, μ = a maps H(0, 4a) to Charlier(a) for a = 1
        let h = FamilyDescriptor::H { a: int(0), b: int(4) };
        let table = h.recurrence(6, None).unwrap();
        let map = AffineMap::new(ratio(-1, 2), int(1)).unwrap();
        let got = map.apply(&table);
        let charlier = FamilyDescriptor::Charlier { a: int(1) }
            .recurrence(6, None)
            .unwrap();
        assert_eq!(got, charlier);
    }

    #[test]
    fn affine_round_trip() {
        let h = FamilyDescriptor::H { a: int(0), b: int(2) };
        let table = h.recurrence(6, None).unwrap();
        let map = AffineMap::new(ratio(3, 7), ratio(-2, 5)).unwrap();
        assert_eq!(map.inverse().apply(&map.apply(&table)), table);
        assert_eq!(AffineMap::identity().apply(&table), table);
    }

    #[test]
    fn identity_reports() {
        let checks = [
            IdentityCheck::CharlierH { a: int(1) },
            IdentityCheck::ParaKrawtchoukQ { mu: ratio(1, 2), n: 5 },
            IdentityCheck::HahnQ {
                alpha: int(1),
                beta: int(2),
                n: 4,
            },
            IdentityCheck::MeixnerH {
                beta: int(2),
                c: ratio(1, 2),
            },
            IdentityCheck::KrawtchoukH { p: ratio(1, 2), n: 5 },
        ];
        for check in &checks {
            let report = verify_identity(check, 10).unwrap();
            assert!(
                report.passed(),
                "{} failed at {:?}",
                report.identity,
                report.failures()
            );
        }
    }

    #[test]
    fn krawtchouk_rational_root_point() {
        // p = 1/3 gives k = 25/9, a perfect square: no extension involved
        let check = IdentityCheck::KrawtchoukH { p: ratio(1, 3), n: 4 };
        let report = verify_identity(&check, 4).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn q_symmetry() {
        assert!(q_symmetry_check(&ratio(1, 2), &ratio(1, 3), &ratio(1, 5), 8).unwrap());
        assert!(q_symmetry_check(&ratio(3, 2), &ratio(1, 3), &int(0), 8).unwrap());
        // b ↦ -b alone is *not* a symmetry
        let plus = FamilyDescriptor::Q {
            a: ratio(3, 2),
            b: ratio(1, 3),
            c: ratio(1, 5),
        };
        let minus = FamilyDescriptor::Q {
            a: ratio(3, 2),
            b: ratio(-1, 3),
            c: ratio(1, 5),
        };
        assert_ne!(
            plus.raw_bc(1, None).unwrap().0,
            minus.raw_bc(1, None).unwrap().0
        );
    }

    #[test]
    fn remark_pairs_match_family_tables() {
        let ctx = LatticeContext::new(ratio(1, 3));
        // H(0, 2) from (z - 2, z)
        let h = FamilyDescriptor::H { a: int(0), b: int(2) };
        let pair = h.pearson_pair(ctx.clone(), None).unwrap().unwrap();
        assert_eq!(
            pair.recurrence_coeffs(8).unwrap(),
            h.recurrence(8, None).unwrap()
        );
        // Q(3/2, 1/3, 1/5) from (z² + a² - b² - c², 2az - 2bc)
        let q = FamilyDescriptor::Q {
            a: ratio(3, 2),
            b: ratio(1, 3),
            c: ratio(1, 5),
        };
        let pair = q.pearson_pair(ctx, None).unwrap().unwrap();
        assert_eq!(
            pair.recurrence_coeffs(8).unwrap(),
            q.recurrence(8, None).unwrap()
        );
    }

    #[test]
    fn remark_pair_with_surd_coefficient() {
        // H(1, 1) needs φ = sqrt(2)·z - 1; the whole closed-form pipeline
        // runs inside the D = 2 extension
        let ctx = LatticeContext::new(ratio(1, 3));
        let d = GaussRational::from_int(2);
        let h = FamilyDescriptor::H { a: int(1), b: int(1) };
        let pair = h.pearson_pair(ctx, Some(&d)).unwrap().unwrap();
        assert!(!pair.phi().coeff(1).is_surd_free());
        let table = pair.recurrence_coeffs(6).unwrap();
        assert_eq!(table, h.recurrence(6, Some(&d)).unwrap());
        let sqrt2 = ExactScalar::sqrt_any(&int(2));
        assert_eq!(table.b(3), &(&int(-6) * &sqrt2));
        assert_eq!(table.c(3), &int(9)); // (1·2 + 1)·3
    }

    #[test]
    fn hahn_vanishes_at_cutoff() {
        let desc = FamilyDescriptor::Hahn {
            alpha: int(1),
            beta: int(2),
            n: 4,
        };
        let (_, c5) = desc.raw_bc(4, None).unwrap();
        assert!(c5.is_zero());
        for n in 0..4 {
            assert!(!desc.raw_bc(n, None).unwrap().1.is_zero());
        }
    }
}
