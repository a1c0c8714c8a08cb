//! The acceptance suite: runs every check in the aggregated property
//! suite and prints one pass/fail line per criterion.

use bilattice_core::selftest;

#[test]
fn acceptance() {
    let seed = std::env::var("BILATTICE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x0B5E55ED);
    let outcomes = selftest::run_all(seed);
    let mut all_ok = true;
    for o in &outcomes {
        println!(
            "{} {:4} {} — {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.label,
            o.details
        );
        all_ok &= o.passed;
    }
    assert!(all_ok, "acceptance criteria failed");
}
