//! Three-term recurrence tables for monic orthogonal polynomial sequences.
//!
//! `P_{n+1}(z) = (z - B_n) P_n(z) - C_n P_{n-1}(z)`, with `P_{-1} = 0`.
//! By Favard's theorem a table with all `C_n ≠ 0` determines a monic OPS
//! uniquely, so tables are the canonical exchange format between the
//! closed-form route, the Hankel oracle, the family catalog and the
//! classifier.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::Poly;
use crate::scalar::ExactScalar;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RecurrenceError {
    #[error("C_{n} vanishes: the table does not describe an orthogonal sequence")]
    ZeroC { n: usize },
    #[error("norm h_0 = m_0 must be nonzero")]
    ZeroNorm,
}

/// Recurrence coefficients `B_0..B_N`, `C_1..C_N` and the norms
/// `h_n = m_0 · C_1 ⋯ C_n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RecurrenceTable {
    #[serde(rename = "B")]
    b: Vec<ExactScalar>,
    #[serde(rename = "C")]
    c: Vec<ExactScalar>,
    h: Vec<ExactScalar>,
    checked_to: usize,
}

impl RecurrenceTable {
    /// Builds a validated table from `B_0..B_N` and `C_1..C_N`
    /// (`c.len() + 1 == b.len()`); every `C_n` must be nonzero.
    pub fn new(
        m0: ExactScalar,
        b: Vec<ExactScalar>,
        c: Vec<ExactScalar>,
    ) -> Result<Self, RecurrenceError> {
        assert_eq!(c.len() + 1, b.len(), "need B_0..B_N and C_1..C_N");
        if m0.is_zero() {
            return Err(RecurrenceError::ZeroNorm);
        }
        let mut h = vec![m0];
        for (i, cn) in c.iter().enumerate() {
            if cn.is_zero() {
                return Err(RecurrenceError::ZeroC { n: i + 1 });
            }
            h.push(h.last().unwrap() * cn);
        }
        let checked_to = c.len();
        Ok(RecurrenceTable { b, c, h, checked_to })
    }

    /// Largest index `N` with `B_N` present.
    pub fn order(&self) -> usize {
        self.b.len() - 1
    }

    pub fn b(&self, n: usize) -> &ExactScalar {
        &self.b[n]
    }

    /// `C_n` for `1 ≤ n ≤ N`.
    pub fn c(&self, n: usize) -> &ExactScalar {
        &self.c[n - 1]
    }

    pub fn h(&self, n: usize) -> &ExactScalar {
        &self.h[n]
    }

    pub fn b_all(&self) -> &[ExactScalar] {
        &self.b
    }

    pub fn c_all(&self) -> &[ExactScalar] {
        &self.c
    }

    pub fn h_all(&self) -> &[ExactScalar] {
        &self.h
    }

    /// The monic polynomials `P_0 .. P_{N+1}` generated by the recurrence.
    pub fn polynomials(&self) -> Vec<Poly> {
        let n_max = self.b.len();
        let mut out = Vec::with_capacity(n_max + 1);
        out.push(Poly::one());
        for n in 0..n_max {
            let factor = Poly::from_coeffs(vec![-self.b[n].clone(), ExactScalar::one()]);
            let mut next = &factor * &out[n];
            if n >= 1 {
                next = &next - &out[n - 1].scale(&self.c[n - 1]);
            }
            out.push(next);
        }
        out
    }
}
