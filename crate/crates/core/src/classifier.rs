//! Classification of Pearson pairs into the `H`/`Q` families.
//!
//! Given `(φ, ψ)` with `deg ψ = 1`, normalize to `d = 1` (divide both by
//! `d`) and split on `deg φ`:
//!
//! - `deg φ = 0`, `φ = c`: the OPS is `H(-1, -c)` shifted by `-e`;
//! - `deg φ = 1`, `φ = bz + c`: it is `H(b² - 1, be - c)` shifted by `-e`,
//!   with the map's sign `λ = ±1` matching the branch of `sqrt(b²)`;
//! - `deg φ = 2`, `φ = az² + bz + c`: it is
//!   `Q(1/(2a), r₁/(2a), r₂/(2a))` shifted by `-b/(2a)`, where
//!   `r_{1,2} = (√Δ₁ ± √Δ₂)/2` with `Δ₁ = (b+1)² - 4a(e+c)` and
//!   `Δ₂ = (b-1)² - 4a(c-e)`.
//!
//! The two discriminant roots are extracted exactly when possible(one
//! quadratic extension suffices whenever `Δ₂/Δ₁` is a square). When they
//! are not representable, classification still verifies family membership
//! rationally: `B_n` and `C_n` of the target `Q` family depend on the
//! roots only through the symmetric functions `r₁r₂ = b - 2ae` and
//! `r₁² + r₂² = b² + 1 - 4ac`, which are reported in place of the
//! parameters. Branch choices are irrelevant up to the symmetry
//! `Q(a,b,c) = Q(a,c,b) = Q(a,-c,-b)`: flipping `√Δ₁` maps `(r₁, r₂)` to
//! `(-r₂, -r₁)` and flipping `√Δ₂` swaps them.

use serde::Serialize;
use thiserror::Error;

use crate::classical::PearsonPair;
use crate::families::{AffineMap, FamilyDescriptor};
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("classification requires deg ψ = 1")]
    PsiDegreeNotOne,
    #[error("φ = 0 admits no regular solution")]
    PhiZero,
    #[error("roots live in two independent extensions: sqrt({d1}) and sqrt({d2})")]
    NeedsTwoExtensions { d1: ExactScalar, d2: ExactScalar },
    #[error("pair is degenerate: {0}")]
    Degenerate(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum CaseKind {
    DegPhi0,
    DegPhi1,
    DegPhi2,
}

/// The family a pair classifies into.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ClassifiedFamily {
    H {
        a: ExactScalar,
        b: ExactScalar,
    },
    Q {
        a: ExactScalar,
        b: ExactScalar,
        c: ExactScalar,
    },
    /// `deg φ = 2` with non-representable roots: the `Q` parameters are
    /// carried by their symmetric functions.
    QSymmetric {
        a: ExactScalar,
        r1r2: ExactScalar,
        r1sq_plus_r2sq: ExactScalar,
    },
}

impl ClassifiedFamily {
    pub fn descriptor(&self) -> Option<FamilyDescriptor> {
        match self {
            ClassifiedFamily::H { a, b } => Some(FamilyDescriptor::H {
                a: a.clone(),
                b: b.clone(),
            }),
            ClassifiedFamily::Q { a, b, c } => Some(FamilyDescriptor::Q {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
            }),
            ClassifiedFamily::QSymmetric { .. } => None,
        }
    }
}

/// Result of classifying a Pearson pair.
#[derive(Clone, Debug)]
pub struct Classification {
    pub case: CaseKind,
    pub family: ClassifiedFamily,
    /// `P_n(z) = λ^n F_n((z - μ)/λ)` maps the family table onto the
    /// pair's table: `B_n = λ B^F_n + μ`, `C_n = λ² C^F_n`.
    pub map: AffineMap,
    /// The `d` divided out to reach the normalized pair.
    pub normalization: ExactScalar,
    /// Coefficients of `φ₄(n)` (ascending), present for `DegPhi2`.
    pub quartic: Option<[ExactScalar; 5]>,
    /// `(r₁, r₂)` when representable.
    pub roots: Option<(ExactScalar, ExactScalar)>,
}

impl Classification {
    /// Reconstructs `(B_n, C_{n+1})` of the classified pair from the
    /// family descriptor and the map.
    pub fn reconstructed_bc(&self, n: usize) -> Option<(ExactScalar, ExactScalar)> {
        let desc = self.family.descriptor()?;
        let disc = self.disc_hint();
        let bc = desc.raw_bc(n, disc.as_ref()).ok()?;
        Some(self.map.apply_bc(bc))
    }

    fn disc_hint(&self) -> Option<crate::scalar::GaussRational> {
        let from_roots = self
            .roots
            .as_ref()
            .map(|(r1, _)| r1.discriminant().clone())
            .filter(|d| !d.is_zero());
        from_roots.or_else(|| {
            match &self.family {
                ClassifiedFamily::H { a, .. } => Some(a.discriminant().clone()),
                _ => None,
            }
            .filter(|d| !d.is_zero())
        })
    }

    /// Exact equality of the reconstruction against the pair's own raw
    /// coefficients for `n = 0..=n_max`; returns the first mismatch.
    pub fn verify(&self, pair: &PearsonPair, n_max: usize) -> Result<(), usize> {
        let (b, c) = pair.raw_coefficients(n_max)?;
        for n in 0..=n_max {
            let got = match &self.family {
                ClassifiedFamily::QSymmetric { .. } => Some(self.symmetric_bc(pair, n)),
                _ => self.reconstructed_bc(n),
            };
            let Some((b_n, c_next)) = got else {
                return Err(n);
            };
            if b_n != b[n] {
                return Err(n);
            }
            if n < n_max && c_next != c[n] {
                return Err(n);
            }
        }
        Ok(())
    }

    /// `(B_n, C_{n+1})` of the final `deg φ = 2` display, written in the
    /// root-free symmetric variables:
    ///
    /// ```text
    /// B_n = -b/(2a) - (2a-1)·r₁r₂ / (2a(2an-2a+1)(2an+1)),
    /// C_{n+1} = -(n+1)(an-a+1)·q(n) / (4a(2an-a+1)(2an+1)²(2an+a+1)),
    /// q(n) = (2an+1)⁴ - (r₁²+r₂²)(2an+1)² + (r₁r₂)²,
    /// ```
    ///
    /// with the `n = 0` values from the cancelled closed forms
    /// (`B_0 = -e`, `C_1 = -φ(-e)/(1+a)` after normalization).
    pub fn symmetric_bc(&self, pair: &PearsonPair, n: usize) -> (ExactScalar, ExactScalar) {
        let d = &self.normalization;
        let (a, b, e) = (&pair.a() / d, &pair.b() / d, &pair.e() / d);
        let (r1r2, p2) = match &self.family {
            ClassifiedFamily::QSymmetric {
                r1r2,
                r1sq_plus_r2sq,
                ..
            } => (r1r2.clone(), r1sq_plus_r2sq.clone()),
            _ => unreachable!("symmetric route is only taken for QSymmetric"),
        };
        let one = ExactScalar::one();
        let two_a = &ExactScalar::from_int(2) * &a;
        let nn = ExactScalar::from_int(n as i64);
        let np1 = ExactScalar::from_int(n as i64 + 1);
        let b_n = if n == 0 {
            -&e
        } else {
            let t = &(&two_a * &nn) + &one;
            let denom = &(&two_a * &(&t - &two_a)) * &t;
            -&(&(&b / &two_a) + &(&(&(&two_a - &one) * &r1r2) / &denom))
        };
        let c_next = if n == 0 {
            let phi_at = pair.phi().eval(&-&e);
            -&(&(&phi_at / d) / &(&one + &a))
        } else {
            let s = &(&two_a * &nn) + &one; // 2an + 1
            let s2 = &s * &s;
            let q = &(&(&s2 * &s2) - &(&p2 * &s2)) + &(&r1r2 * &r1r2);
            let numer = &(&np1 * &(&(&a * &nn) - &(&a - &one))) * &q;
            let denom =
                &(&(&(&ExactScalar::from_int(4) * &a) * &(&s - &a)) * &s2) * &(&s + &a);
            -&(&numer / &denom)
        };
        (b_n, c_next)
    }
}

/// Serialized classification, matching the CLI schema.
#[derive(Serialize)]
pub struct ClassificationRepr {
    pub case: CaseKind,
    pub family: &'static str,
    pub params: serde_json::Map<String, serde_json::Value>,
    pub map: AffineMap,
    pub normalization: ExactScalar,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric_params: Option<SymmetricParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quartic: Option<Vec<ExactScalar>>,
}

#[derive(Serialize)]
pub struct SymmetricParams {
    pub r1r2: ExactScalar,
    pub r1sq_plus_r2sq: ExactScalar,
}

impl From<&Classification> for ClassificationRepr {
    fn from(c: &Classification) -> Self {
        let mut params = serde_json::Map::new();
        let mut put = |name: &str, v: &ExactScalar| {
            params.insert(name.into(), serde_json::Value::String(v.to_string()));
        };
        let (family, symmetric_params) = match &c.family {
            ClassifiedFamily::H { a, b } => {
                put("a", a);
                put("b", b);
                ("H", None)
            }
            ClassifiedFamily::Q { a, b, c: cc } => {
                put("a", a);
                put("b", b);
                put("c", cc);
                ("Q", None)
            }
            ClassifiedFamily::QSymmetric {
                a,
                r1r2,
                r1sq_plus_r2sq,
            } => {
                put("a", a);
                (
                    "Q",
                    Some(SymmetricParams {
                        r1r2: r1r2.clone(),
                        r1sq_plus_r2sq: r1sq_plus_r2sq.clone(),
                    }),
                )
            }
        };
        ClassificationRepr {
            case: c.case,
            family,
            params,
            map: c.map.clone(),
            normalization: c.normalization.clone(),
            symmetric_params,
            quartic: c.quartic.as_ref().map(|q| q.to_vec()),
        }
    }
}

/// The two discriminants `Δ₁ = (b+1)² - 4a(e+c)` and
/// `Δ₂ = (b-1)² - 4a(c-e)` of the normalized pair.
fn discriminants(a: &ExactScalar, b: &ExactScalar, c: &ExactScalar, e: &ExactScalar) -> (ExactScalar, ExactScalar) {
    let one = ExactScalar::one();
    let four_a = &ExactScalar::from_int(4) * a;
    let bp = &(b + &one) * &(b + &one);
    let bm = &(b - &one) * &(b - &one);
    (&bp - &(&four_a * &(e + c)), &bm - &(&four_a * &(c - e)))
}

/// Square roots of both discriminants within at most one extension.
fn discriminant_roots(
    d1: &ExactScalar,
    d2: &ExactScalar,
) -> Result<(ExactScalar, ExactScalar), ClassifyError> {
    let (s1, s2) = (d1.sqrt_same_context(), d2.sqrt_same_context());
    match (s1, s2) {
        (Some(s1), Some(s2)) => Ok((s1, s2)),
        (Some(s1), None) => {
            if !d2.is_surd_free() {
                return Err(ClassifyError::NeedsTwoExtensions {
                    d1: d1.clone(),
                    d2: d2.clone(),
                });
            }
            Ok((s1, ExactScalar::sqrt_any(d2)))
        }
        (None, Some(s2)) => {
            if !d1.is_surd_free() {
                return Err(ClassifyError::NeedsTwoExtensions {
                    d1: d1.clone(),
                    d2: d2.clone(),
                });
            }
            Ok((ExactScalar::sqrt_any(d1), s2))
        }
        (None, None) => {
            if !d1.is_surd_free() || !d2.is_surd_free() {
                return Err(ClassifyError::NeedsTwoExtensions {
                    d1: d1.clone(),
                    d2: d2.clone(),
                });
            }
            let s1 = ExactScalar::sqrt_any(d1);
            let s2 = d2
                .sqrt_in(d1.base_part())
                .ok_or(ClassifyError::NeedsTwoExtensions {
                    d1: d1.clone(),
                    d2: d2.clone(),
                })?;
            Ok((s1, s2))
        }
    }
}

/// Classifies a Pearson pair into its family, up to an affine shift.
pub fn classify(pair: &PearsonPair) -> Result<Classification, ClassifyError> {
    let d = pair.d();
    if d.is_zero() {
        return Err(ClassifyError::PsiDegreeNotOne);
    }
    if pair.phi().is_zero() {
        return Err(ClassifyError::PhiZero);
    }
    // normalize to d = 1
    let a = &pair.a() / &d;
    let b = &pair.b() / &d;
    let c = &pair.c() / &d;
    let e = &pair.e() / &d;
    let one = ExactScalar::one();

    if a.is_zero() && b.is_zero() {
        // φ = c: H(-1, -c) shifted by -e
        return Ok(Classification {
            case: CaseKind::DegPhi0,
            family: ClassifiedFamily::H {
                a: -&one,
                b: -&c,
            },
            map: AffineMap::shift(-&e),
            normalization: d,
            quartic: None,
            roots: None,
        });
    }
    if a.is_zero() {
        // φ = bz + c: H(b² - 1, be - c) shifted by -e; λ = ±1 picks the
        // branch of sqrt(b²) that equals b
        let a_h = &(&b * &b) - &one;
        let b_h = &(&b * &e) - &c;
        let root = (&(&b * &b))
            .sqrt_same_context()
            .expect("b² is a perfect square in its own context");
        let lambda = if root == b { one } else { -&one };
        return Ok(Classification {
            case: CaseKind::DegPhi1,
            family: ClassifiedFamily::H { a: a_h, b: b_h },
            map: AffineMap::new(lambda, -&e).expect("λ = ±1"),
            normalization: d,
            quartic: None,
            roots: None,
        });
    }

    // deg φ = 2
    let (d1, d2) = discriminants(&a, &b, &c, &e);
    let two_a = &ExactScalar::from_int(2) * &a;
    let mu = -&(&b / &two_a);
    let quartic = quartic_coefficients(&a, &b, &c, &e);
    let r1r2 = &b - &(&two_a * &e);
    let p2 = &(&(&b * &b) + &one) - &(&(&ExactScalar::from_int(4) * &a) * &c);
    let family = match discriminant_roots(&d1, &d2) {
        Ok((s1, s2)) => {
            let half = ExactScalar::from_ratio(1, 2);
            let r1 = &(&s1 + &s2) * &half;
            let r2 = &(&s1 - &s2) * &half;
            return Ok(Classification {
                case: CaseKind::DegPhi2,
                family: ClassifiedFamily::Q {
                    a: &one / &two_a,
                    b: &r1 / &two_a,
                    c: &r2 / &two_a,
                },
                map: AffineMap::shift(mu),
                normalization: d,
                quartic: Some(quartic),
                roots: Some((r1, r2)),
            });
        }
        Err(ClassifyError::NeedsTwoExtensions { .. }) => ClassifiedFamily::QSymmetric {
            a: &one / &two_a,
            r1r2,
            r1sq_plus_r2sq: p2,
        },
        Err(e) => return Err(e),
    };
    Ok(Classification {
        case: CaseKind::DegPhi2,
        family,
        map: AffineMap::shift(mu),
        normalization: d,
        quartic: Some(quartic),
        roots: None,
    })
}

/// Coefficients of
/// `φ₄(n) = 4a³n⁴ + 8a²n³ + a(5 + 4ac - b²)n² + (1 - b² + 4ac)n + c - be + ae²`
/// (ascending), for the pair normalized to `d = 1`.
fn quartic_coefficients(
    a: &ExactScalar,
    b: &ExactScalar,
    c: &ExactScalar,
    e: &ExactScalar,
) -> [ExactScalar; 5] {
    let four_ac = &(&ExactScalar::from_int(4) * a) * c;
    let b_sq = b * b;
    [
        &(c - &(b * e)) + &(&(a * e) * e),
        &(&ExactScalar::one() - &b_sq) + &four_ac,
        a * &(&(&ExactScalar::from_int(5) + &four_ac) - &b_sq),
        &ExactScalar::from_int(8) * &(a * a),
        &ExactScalar::from_int(4) * &(&(a * a) * a),
    ]
}

/// The four `α` values factoring the quartic of the `d`-normalized pair:
/// `φ₄(n) = 4(an+α₁)(an+α₂)(an+α₃)(n+α₄)` with
///
/// ```text
/// α₁ = 1/2 + √Δ₁/4 + √Δ₂/4,   α₂ = 1/2 + √Δ₁/4 - √Δ₂/4,
/// α₃ = 1 - α₂,                α₄ = (1 - α₁)/a.
/// ```
///
/// The square-root branches are the canonical ones (positive real part,
/// or nonnegative imaginary part on the imaginary axis); any other choice
/// permutes the factors.
pub fn quartic_roots(pair: &PearsonPair) -> Result<[ExactScalar; 4], ClassifyError> {
    let d = pair.d();
    if d.is_zero() {
        return Err(ClassifyError::PsiDegreeNotOne);
    }
    let a = &pair.a() / &d;
    if a.is_zero() {
        return Err(ClassifyError::Degenerate("deg φ must be 2".into()));
    }
    let b = &pair.b() / &d;
    let c = &pair.c() / &d;
    let e = &pair.e() / &d;
    let (d1, d2) = discriminants(&a, &b, &c, &e);
    let (s1, s2) = discriminant_roots(&d1, &d2)?;
    let half = ExactScalar::from_ratio(1, 2);
    let quarter = ExactScalar::from_ratio(1, 4);
    let alpha1 = &(&half + &(&quarter * &s1)) + &(&quarter * &s2);
    let alpha2 = &(&half + &(&quarter * &s1)) - &(&quarter * &s2);
    let alpha3 = &ExactScalar::one() - &alpha2;
    let alpha4 = &(&ExactScalar::one() - &alpha1) / &a;
    Ok([alpha1, alpha2, alpha3, alpha4])
}
