//! Exact arithmetic for classical orthogonal polynomials on bi-lattices.
//!
//! The bi-lattice is the point set `x(s) = s + γ(1 + (-1)^s)`. This crate
//! implements, entirely over exact Gaussian-rational arithmetic (with at
//! most one adjoined square root):
//!
//! - the twisted ring `{ p(z) + σ q(z) : σ² = 1 }` with the
//!   divided-difference and averaging operators and their Leibniz calculus
//!   ([`sigma`]);
//! - moment functionals, dual operators, a forward Pearson moment solver
//!   and an independent Hankel-determinant oracle ([`functional`]);
//! - regularity tests, closed-form recurrence coefficients, iterated
//!   Pearson pairs, derived functionals and the functional Rodrigues
//!   formula ([`classical`]);
//! - the catalog of named families (`H`, `Q`, Meixner, Charlier,
//!   Krawtchouk, Hahn, para-Krawtchouk) with exact verification of the
//!   cross-family identities ([`families`]);
//! - the full classification of Pearson pairs into the `H`/`Q` families up
//!   to affine maps ([`classifier`]).
//!
//! Everything is deterministic and every comparison in the crate and its
//! test suite is exact equality; no floating point is used anywhere.

pub mod classical;
pub mod classifier;
pub mod families;
pub mod functional;
pub mod poly;
pub mod recurrence;
pub mod scalar;
pub mod selftest;
pub mod sigma;

pub use classical::{IteratedPair, PearsonPair, RegularityVerdict, RodriguesData};
pub use classifier::{classify, quartic_roots, Classification};
pub use families::{
    q_symmetry_check, verify_identity, AffineMap, FamilyDescriptor, IdentityCheck, IdentityReport,
};
pub use functional::{hankel_oracle, solve_pearson_moments, HankelReport, MomentFunctional};
pub use poly::Poly;
pub use recurrence::RecurrenceTable;
pub use scalar::{ExactScalar, GaussRational, Rational};
pub use sigma::{LatticeContext, SigmaPoly, SigmaScalar};
