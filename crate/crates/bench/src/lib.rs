//! Shared fixtures for the benchmarks.

use bilattice_core::scalar::ExactScalar;
use bilattice_core::sigma::LatticeContext;
use bilattice_core::PearsonPair;

/// The `H(0, 2)` pair at γ = 1/3.
pub fn h_pair() -> PearsonPair {
    PearsonPair::new(
        "z - 2".parse().unwrap(),
        "z".parse().unwrap(),
        LatticeContext::new(ExactScalar::from_ratio(1, 3)),
    )
}

/// A generic `Q`-type pair at γ = 1/3.
pub fn q_pair() -> PearsonPair {
    PearsonPair::new(
        "z^2 + 1889/900".parse().unwrap(),
        "3*z - 2/15".parse().unwrap(),
        LatticeContext::new(ExactScalar::from_ratio(1, 3)),
    )
}
