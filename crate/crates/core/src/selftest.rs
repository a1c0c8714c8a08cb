//! The aggregated property suite.
//!
//! Each check here is one acceptance criterion of the crate. The CLI
//! `selftest` subcommand and the `acceptance` integration test both run
//! exactly this list, so there is a single source of truth for what
//! "verified" means. All comparisons are exact; randomized checks draw
//! from a seeded deterministic generator.

use crate::classical::{PearsonPair, RegularityVerdict};
use crate::classifier::{classify, quartic_roots, ClassifiedFamily};
use crate::families::{verify_identity, FamilyDescriptor, IdentityCheck};
use crate::functional::{hankel_oracle, FunctionalError};
use crate::poly::Poly;
use crate::recurrence::RecurrenceTable;
use crate::scalar::ExactScalar;
use crate::sigma::{LatticeContext, SigmaPoly, SigmaScalar};

/// Result of one acceptance check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub label: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CheckOutcome {
    fn pass(id: &'static str, label: &'static str, details: String) -> Self {
        CheckOutcome {
            id,
            label,
            passed: true,
            details,
        }
    }

    fn fail(id: &'static str, label: &'static str, details: String) -> Self {
        CheckOutcome {
            id,
            label,
            passed: false,
            details,
        }
    }
}

/// Deterministic generator (splitmix64); stable across platforms and
/// releases, unlike external RNG crates.
pub struct Seeded(u64);

impl Seeded {
    pub fn new(seed: u64) -> Self {
        Seeded(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Integer in `[lo, hi]`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }

    /// Small nonzero rational, occasionally with an imaginary part.
    pub fn scalar(&mut self) -> ExactScalar {
        let num = self.int(-6, 6);
        let den = self.int(1, 4);
        let mut v = ExactScalar::from_ratio(num, den);
        if self.next_u64() % 4 == 0 {
            let im = ExactScalar::from_ratio(self.int(-3, 3), self.int(1, 3));
            v = &v + &(&im * &ExactScalar::i());
        }
        v
    }

    pub fn nonzero_scalar(&mut self) -> ExactScalar {
        loop {
            let v = self.scalar();
            if !v.is_zero() {
                return v;
            }
        }
    }

    pub fn poly(&mut self, max_deg: usize) -> Poly {
        let deg = self.int(0, max_deg as i64) as usize;
        Poly::from_coeffs((0..=deg).map(|_| self.scalar()).collect())
    }

    pub fn sigma_poly(&mut self, max_deg: usize, ctx: &LatticeContext) -> SigmaPoly {
        SigmaPoly::new(self.poly(max_deg), self.poly(max_deg), ctx.clone())
    }
}

/// The regular Pearson fixtures used across the suite: three `H`-type and
/// three `Q`-type pairs.
pub fn regular_fixtures() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        ("h-charlier-like", "z - 2", "z"),
        ("h-linear-phi", "2*z + 1", "z"),
        // the constant must avoid the nonpositive integers: C_{n+1} = -(n+c)(n+1)
        ("h-constant-phi", "2", "z + 2"),
        ("q-generic", "z^2 + 1889/900", "3*z - 2/15"),
        ("q-symmetric-zero", "z^2 + 15/4", "4*z"),
        ("q-surd-roots", "z^2 - 1", "z + 3/4"),
    ]
}

/// Engineered regularity failures with the index where they break.
pub fn failing_fixtures() -> Vec<(&'static str, &'static str, &'static str, RegularityVerdict)> {
    vec![
        (
            "second-condition-at-0",
            "z",
            "z",
            RegularityVerdict::SecondConditionZero { n: 0 },
        ),
        (
            "admissibility-at-3",
            "-1/3*z^2 + 1",
            "z",
            RegularityVerdict::NotAdmissible { n: 3 },
        ),
        (
            "para-krawtchouk-preimage",
            "z^2 + 63/16",
            "-4*z",
            RegularityVerdict::NotAdmissible { n: 4 },
        ),
    ]
}

fn fixture_pair(phi: &str, psi: &str, gamma: ExactScalar) -> PearsonPair {
    PearsonPair::new(
        phi.parse().expect("fixture phi"),
        psi.parse().expect("fixture psi"),
        LatticeContext::new(gamma),
    )
}

fn gamma_values() -> Vec<ExactScalar> {
    vec![
        ExactScalar::zero(),
        ExactScalar::from_ratio(1, 3),
        &ExactScalar::from_ratio(1, 2) * &ExactScalar::i(),
    ]
}

/// Runs every acceptance check in order, recording wall time per check.
pub fn run_all(seed: u64) -> Vec<CheckOutcome> {
    let checks: Vec<Box<dyn FnOnce() -> CheckOutcome>> = vec![
        Box::new(move || operator_calculus(seed)),
        Box::new(expansion_tables),
        Box::new(move || leibniz(seed)),
        Box::new(regularity_oracle),
        Box::new(sigma_cancellation),
        Box::new(rodrigues),
        Box::new(move || iterated_pairs(seed)),
        Box::new(family_identities),
        Box::new(classification_round_trip),
        Box::new(gamma_independence),
    ];
    checks
        .into_iter()
        .map(|check| {
            let start = std::time::Instant::now();
            let mut outcome = check();
            outcome.details = format!("{} [{:.2?}]", outcome.details, start.elapsed());
            outcome
        })
        .collect()
}

/// Criterion 1: the six operator-calculus identities on 200 seeded
/// random `(f, g, γ)` triples of degree ≤ 8.
pub fn operator_calculus(seed: u64) -> CheckOutcome {
    const ID: &str = "C1";
    const LABEL: &str = "operator calculus product/composition rules";
    let mut rng = Seeded::new(seed);
    let trials = 200;
    for trial in 0..trials {
        let ctx = LatticeContext::new(rng.scalar());
        let f = rng.sigma_poly(8, &ctx);
        let g = rng.sigma_poly(8, &ctx);
        let (df, sf) = f.difference_and_average();
        let (dg, sg) = g.difference_and_average();
        let (dfg, sfg) = (&f * &g).difference_and_average();
        let (d_gsf, s_gsf) = (&g * &sf).difference_and_average();
        let (d_gdf, s_gdf) = (&g * &df).difference_and_average();
        let (ddf, sdf) = df.difference_and_average();
        let (dsf, ssf) = sf.difference_and_average();
        let f_sg = &f * &sg;
        let f_dg = &f * &dg;
        let checks: [(&str, &SigmaPoly, SigmaPoly); 6] = [
            ("D(fg)", &dfg, &(&df * &sg) + &(&sf * &dg)),
            ("S(fg)", &sfg, &(&df * &dg) + &(&sf * &sg)),
            ("SDf = DSf", &sdf, dsf),
            ("S²f = D²f + f", &ssf, &ddf + &f),
            ("f·Sg = S(g·Sf) - D(g·Df)", &f_sg, &s_gsf - &d_gdf),
            ("f·Dg = D(g·Sf) - S(g·Df)", &f_dg, &d_gsf - &s_gdf),
        ];
        for (name, lhs, rhs) in checks {
            if *lhs != rhs {
                return CheckOutcome::fail(
                    ID,
                    LABEL,
                    format!("identity {name} fails on trial {trial}"),
                );
            }
        }
    }
    CheckOutcome::pass(ID, LABEL, format!("{trials} random (f, g, γ) triples, deg ≤ 8"))
}

/// Criterion 2: the expansion tables for `D z^n` and `S z^n`, `n ≤ 10`,
/// against the closed-form top coefficients, at five γ values.
pub fn expansion_tables() -> CheckOutcome {
    const ID: &str = "C2";
    const LABEL: &str = "monomial expansion tables for D and S";
    let gammas = vec![
        ExactScalar::zero(),
        ExactScalar::from_ratio(1, 3),
        ExactScalar::from_int(-2),
        &ExactScalar::from_ratio(1, 2) * &ExactScalar::i(),
        &ExactScalar::from_ratio(3, 4) - &(&ExactScalar::from_ratio(1, 7) * &ExactScalar::i()),
    ];
    let int = ExactScalar::from_int;
    for gamma in &gammas {
        let ctx = LatticeContext::new(gamma.clone());
        let g2 = gamma * gamma;
        let g4 = &g2 * &g2;
        let images = SigmaPoly::monomial_images(&ctx, 10);
        for n in 0..=10i64 {
            let (d_img, s_img) = &images[n as usize];
            // (even expectation, odd expectation) at descending degrees
            let ff = |k: i64| int((1..=k).map(|j| n - j + 1).product::<i64>());
            let u_n = &(&ff(3) / &int(6)) * &(&int(1) + &(&int(12) * &g2));
            let v_n = -&(&(&(gamma * &ff(4)) / &int(3)) * &(&int(1) + &(&int(4) * &g2)));
            let w_n = &(&ff(5) / &int(120))
                * &(&(&int(1) + &(&int(40) * &g2)) + &(&int(80) * &g4));
            let hat_u = &(&ff(2) / &int(2)) * &(&int(1) + &(&int(4) * &g2));
            let hat_v = -&(&(&(gamma * &ff(3)) / &int(3)) * &(&(&int(4) * &g2) + &int(3)));
            let hat_w = &(&ff(4) / &int(24))
                * &(&(&int(1) + &(&int(24) * &g2)) + &(&int(16) * &g4));
            let d_expect: [(i64, ExactScalar, bool); 5] = [
                (n - 1, int(n), false),
                (n - 2, &(&int(-2) * &ff(2)) * gamma, true),
                (n - 3, u_n, false),
                (n - 4, v_n, true),
                (n - 5, w_n, false),
            ];
            let s_expect: [(i64, ExactScalar, bool); 5] = [
                (n, int(1), false),
                (n - 1, &(&int(-2) * &int(n)) * gamma, true),
                (n - 2, hat_u, false),
                (n - 3, hat_v, true),
                (n - 4, hat_w, false),
            ];
            for (img, expect, op) in [(d_img, &d_expect, "D"), (s_img, &s_expect, "S")] {
                for (idx, val, odd) in expect {
                    if *idx < 0 {
                        continue;
                    }
                    let part = if *odd { img.odd_part() } else { img.even_part() };
                    if &part.coeff(*idx as usize) != val {
                        return CheckOutcome::fail(
                            ID,
                            LABEL,
                            format!("{op} z^{n}: coefficient of z^{idx} mismatch at γ = {gamma}"),
                        );
                    }
                }
            }
        }
    }
    CheckOutcome::pass(ID, LABEL, "n ≤ 10 at 5 γ values, top five coefficients".into())
}

/// Criterion 3: the Leibniz formula under pairing and the closed forms of
/// `T(n,k)f` for `deg f ≤ 2`.
pub fn leibniz(seed: u64) -> CheckOutcome {
    const ID: &str = "C3";
    const LABEL: &str = "Leibniz formula and T(n,k) closed forms";
    let mut rng = Seeded::new(seed ^ 0x7e1bf0);
    for _ in 0..12 {
        let gamma = rng.scalar();
        let ctx = LatticeContext::new(gamma.clone());
        let (a, b, c) = (rng.scalar(), rng.scalar(), rng.scalar());
        let f = SigmaPoly::from_poly(
            Poly::from_coeffs(vec![c.clone(), b.clone(), a.clone()]),
            ctx.clone(),
        );
        for n in 0..=6usize {
            let row = f.leibniz_row(n);
            // w = z - σγ(1 - (-1)^n)
            let parity = ExactScalar::from_int(if n % 2 == 0 { 0 } else { -2 });
            let w = SigmaPoly::new(
                Poly::z(),
                Poly::constant(&parity * &gamma),
                ctx.clone(),
            );
            let t0 = &(&(&w * &w).scale(&a) + &w.scale(&b))
                + &SigmaPoly::constant(
                    &c + &(&a * &ExactScalar::from_int(n as i64)),
                    ctx.clone(),
                );
            let t1 = &w.scale(&(&(&ExactScalar::from_int(2) * &a) * &ExactScalar::from_int(n as i64)))
                + &SigmaPoly::constant(&b * &ExactScalar::from_int(n as i64), ctx.clone());
            if row[0] != t0 {
                return CheckOutcome::fail(ID, LABEL, format!("T({n},0) closed form"));
            }
            if n >= 1 && row[1] != t1 {
                return CheckOutcome::fail(ID, LABEL, format!("T({n},1) closed form"));
            }
            if n >= 2 {
                let t2 = SigmaPoly::constant(
                    &a * &ExactScalar::from_int((n * (n - 1)) as i64),
                    ctx.clone(),
                );
                if row[2] != t2 {
                    return CheckOutcome::fail(ID, LABEL, format!("T({n},2) closed form"));
                }
            }
        }
    }
    // functional-level Leibniz on a Pearson fixture: the operands
    // D^{n-k} S^k u are shared across test polynomials, so build that
    // grid once
    let pair = fixture_pair("z - 2", "z", ExactScalar::from_ratio(1, 3));
    let u = pair
        .pearson_moments(SigmaScalar::one(), 14)
        .expect("fixture moments");
    let n_top = 5usize;
    let mut grid: Vec<Vec<crate::functional::MomentFunctional>> = Vec::new();
    for k in 0..=n_top {
        let base = if k == 0 {
            u.clone()
        } else {
            grid[k - 1][0].dual_average()
        };
        let mut row = vec![base];
        for j in 1..=n_top - k {
            row.push(row[j - 1].dual_difference());
        }
        grid.push(row);
    }
    let mut rng = Seeded::new(seed ^ 0x5e1b);
    for _ in 0..4 {
        let f = SigmaPoly::from_poly(
            Poly::from_coeffs(vec![rng.scalar(), rng.scalar(), rng.scalar()]),
            pair.context().clone(),
        );
        // LHS chain: D^n (f u)
        let mut lhs = u.left_mul(&f).expect("degree fits");
        for n in 0..=n_top {
            if n > 0 {
                lhs = lhs.dual_difference();
            }
            // RHS: Σ_k T(n,k)f · D^{n-k} S^k u
            let row = f.leibniz_row(n);
            let mut rhs: Option<crate::functional::MomentFunctional> = None;
            for (k, t) in row.iter().enumerate() {
                let term = grid[k][n - k].left_mul(t).expect("degree fits");
                rhs = Some(match rhs {
                    None => term,
                    Some(acc) => acc.sub(&term.scale(&-&SigmaScalar::one())),
                });
            }
            let rhs = rhs.unwrap();
            for m in 0..=n_top {
                let zm = SigmaPoly::z_pow(m, pair.context().clone());
                let l = lhs.pair(&zm).expect("in range");
                let r = rhs.pair(&zm).expect("in range");
                if l != r {
                    return CheckOutcome::fail(
                        ID,
                        LABEL,
                        format!("functional Leibniz fails at n = {n}, m = {m}"),
                    );
                }
            }
        }
    }
    // T(n,1) ψ^[n] = n d_{2n}, the constant driving the Rodrigues proof
    let pair = fixture_pair("2*z^2 + z - 1", "3*z + 2", ExactScalar::from_ratio(1, 2));
    for n in 1..=4usize {
        let psi_n = pair.iterated_pair(n).psi;
        let got = psi_n.leibniz_coefficient(n, 1);
        let expect = SigmaPoly::constant(
            &ExactScalar::from_int(n as i64) * &pair.d_n(2 * n as i64),
            pair.context().clone(),
        );
        if got != expect {
            return CheckOutcome::fail(ID, LABEL, format!("T({n},1)ψ^[{n}] != n·d_2n"));
        }
    }
    CheckOutcome::pass(ID, LABEL, "closed forms n ≤ 6; pairing level n ≤ 5".into())
}

/// Criterion 4: the closed-form regularity test and coefficients agree
/// with the Hankel oracle on every fixture.
pub fn regularity_oracle() -> CheckOutcome {
    const ID: &str = "C4";
    const LABEL: &str = "regularity and B/C closed forms vs Hankel oracle";
    let n_max = 8;
    let gamma = ExactScalar::from_ratio(1, 3);
    for (name, phi, psi) in regular_fixtures() {
        let pair = fixture_pair(phi, psi, gamma.clone());
        let verdict = pair.regular(n_max);
        if !verdict.is_regular() {
            return CheckOutcome::fail(ID, LABEL, format!("{name}: expected regular, got {verdict}"));
        }
        let u = match pair.pearson_moments(SigmaScalar::one(), 2 * n_max + 2) {
            Ok(u) => u,
            Err(e) => return CheckOutcome::fail(ID, LABEL, format!("{name}: {e}")),
        };
        let report = match hankel_oracle(&u, n_max) {
            Ok(r) => r,
            Err(e) => return CheckOutcome::fail(ID, LABEL, format!("{name}: oracle: {e}")),
        };
        let Some(oracle_table) = report.table else {
            return CheckOutcome::fail(
                ID,
                LABEL,
                format!("{name}: oracle finds singular Δ_{:?}", report.first_singular),
            );
        };
        let closed = match pair.recurrence_coeffs(n_max) {
            Ok(t) => t,
            Err(e) => return CheckOutcome::fail(ID, LABEL, format!("{name}: {e}")),
        };
        if closed != oracle_table {
            return CheckOutcome::fail(ID, LABEL, format!("{name}: closed forms differ from oracle"));
        }
        // the direct C_1 formula
        let c1 = -&(&pair.phi().eval(&-&(&pair.e() / &pair.d())) / &(&pair.d() + &pair.a()));
        if closed.c(1) != &c1 {
            return CheckOutcome::fail(ID, LABEL, format!("{name}: C_1 formula mismatch"));
        }
    }
    for (name, phi, psi, expected) in failing_fixtures() {
        let pair = fixture_pair(phi, psi, gamma.clone());
        let verdict = pair.regular(n_max);
        if verdict != expected {
            return CheckOutcome::fail(
                ID,
                LABEL,
                format!("{name}: expected {expected}, got {verdict}"),
            );
        }
        match (&verdict, pair.pearson_moments(SigmaScalar::one(), 2 * n_max + 2)) {
            (RegularityVerdict::NotAdmissible { n }, Err(FunctionalError::NotSolvable { n: m })) => {
                if m != *n {
                    return CheckOutcome::fail(
                        ID,
                        LABEL,
                        format!("{name}: solver fails at {m}, admissibility at {n}"),
                    );
                }
            }
            (RegularityVerdict::NotAdmissible { n }, Ok(_)) => {
                return CheckOutcome::fail(
                    ID,
                    LABEL,
                    format!("{name}: solver succeeded past admissibility failure at {n}"),
                );
            }
            (RegularityVerdict::SecondConditionZero { n }, Ok(u)) => {
                // Δ_{n+1} must be the first singular Hankel determinant
                let report = match hankel_oracle(&u, n_max) {
                    Ok(r) => r,
                    Err(e) => return CheckOutcome::fail(ID, LABEL, format!("{name}: oracle: {e}")),
                };
                if report.first_singular != Some(n + 1) {
                    return CheckOutcome::fail(
                        ID,
                        LABEL,
                        format!(
                            "{name}: condition 2 fails at {n} but first singular Δ is {:?}",
                            report.first_singular
                        ),
                    );
                }
            }
            (v, r) => {
                return CheckOutcome::fail(
                    ID,
                    LABEL,
                    format!("{name}: inconsistent verdict {v} vs solver {:?}", r.map(|_| ())),
                );
            }
        }
    }
    CheckOutcome::pass(
        ID,
        LABEL,
        format!(
            "{} regular + {} failing fixtures, n ≤ {n_max}",
            regular_fixtures().len(),
            failing_fixtures().len()
        ),
    )
}

/// Criterion 5: Pearson moments and the Rodrigues route are σ-free on
/// every regular fixture.
pub fn sigma_cancellation() -> CheckOutcome {
    const ID: &str = "C5";
    const LABEL: &str = "sigma parts cancel in moments and P_n";
    for gamma in gamma_values() {
        for (name, phi, psi) in regular_fixtures() {
            let pair = fixture_pair(phi, psi, gamma.clone());
            let u = match pair.pearson_moments(SigmaScalar::one(), 16) {
                Ok(u) => u,
                Err(e) => return CheckOutcome::fail(ID, LABEL, format!("{name}: {e}")),
            };
            for k in 0..=16 {
                let m = u.moment(k).expect("within order");
                if !m.is_sigma_free() {
                    return CheckOutcome::fail(
                        ID,
                        LABEL,
                        format!("{name}: moment m_{k} has sigma residue {} at γ = {gamma}", m.sigma),
                    );
                }
            }
            // the Rodrigues data evaluates φ^[n-1] at σ-bearing points;
            // construction fails loudly if any residue survives
            if let Err(e) = pair.rodrigues(6) {
                return CheckOutcome::fail(ID, LABEL, format!("{name}: rodrigues: {e}"));
            }
        }
    }
    CheckOutcome::pass(ID, LABEL, "all regular fixtures at 3 γ values".into())
}

/// Criterion 6: `P_n = k_n R_n` and the functional Rodrigues identity
/// under pairing, on four fixtures at two γ values.
pub fn rodrigues() -> CheckOutcome {
    const ID: &str = "C6";
    const LABEL: &str = "functional Rodrigues formula";
    let fixtures = ["z - 2", "2*z + 1", "z^2 + 1889/900", "z^2 - 1"];
    let psis = ["z", "z", "3*z - 2/15", "z + 3/4"];
    let gammas = [
        ExactScalar::from_ratio(1, 2),
        &ExactScalar::from_ratio(1, 3) * &ExactScalar::i(),
    ];
    let n_max = 6usize;
    for gamma in &gammas {
        for (phi, psi) in fixtures.iter().zip(psis.iter()) {
            let pair = fixture_pair(phi, psi, gamma.clone());
            let data = match pair.rodrigues(n_max) {
                Ok(d) => d,
                Err(e) => return CheckOutcome::fail(ID, LABEL, format!("{phi}: {e}")),
            };
            let polys = match pair.recurrence_coeffs(n_max) {
                Ok(t) => t.polynomials(),
                Err(e) => return CheckOutcome::fail(ID, LABEL, format!("{phi}: {e}")),
            };
            for n in 0..=n_max {
                if data.r[n].scale(&data.k[n]) != polys[n] {
                    return CheckOutcome::fail(
                        ID,
                        LABEL,
                        format!("{phi}: P_{n} != k_{n} R_{n} at γ = {gamma}"),
                    );
                }
            }
            let u = match pair.pearson_moments(SigmaScalar::one(), 20) {
                Ok(u) => u,
                Err(e) => return CheckOutcome::fail(ID, LABEL, format!("{phi}: {e}")),
            };
            let chain = match pair.derived_functional_chain(&u, n_max) {
                Ok(c) => c,
                Err(e) => return CheckOutcome::fail(ID, LABEL, format!("{phi}: {e}")),
            };
            // D^n z^m images, built incrementally; they stay tiny
            let ctx = pair.context().clone();
            let images: Vec<Vec<SigmaPoly>> = (0..=n_max)
                .map(|m| {
                    let mut row = vec![SigmaPoly::z_pow(m, ctx.clone())];
                    for n in 1..=n_max {
                        row.push(row[n - 1].difference());
                    }
                    row
                })
                .collect();
            for n in 0..=n_max {
                for m in 0..=n_max {
                    // <P_n u, z^m> = <u, P_n z^m>
                    let pnm = SigmaPoly::from_poly(polys[n].shift_up(m), ctx.clone());
                    let lhs = u.pair(&pnm).expect("in range");
                    // <k_n D^n u^[n], z^m> = k_n (-1)^n <u^[n], D^n z^m>
                    let mut rhs = chain[n].pair(&images[m][n]).expect("in range");
                    if n % 2 == 1 {
                        rhs = -&rhs;
                    }
                    let rhs = rhs.scale(&data.k[n]);
                    if lhs != rhs {
                        return CheckOutcome::fail(
                            ID,
                            LABEL,
                            format!("{phi}: <P_{n}u - k_{n}D^{n}u^[{n}], z^{m}> != 0 at γ = {gamma}"),
                        );
                    }
                }
            }
            // low orders also through the full dual-functional route
            for n in 0..=2usize {
                let pn = SigmaPoly::from_poly(polys[n].clone(), ctx.clone());
                let lhs = u.left_mul(&pn).expect("P_n degree fits");
                let mut rhs = chain[n].clone();
                for _ in 0..n {
                    rhs = rhs.dual_difference();
                }
                let rhs = rhs.scale(&SigmaScalar::from_plain(data.k[n].clone()));
                let diff = lhs.sub(&rhs);
                for m in 0..=n_max {
                    let zm = SigmaPoly::z_pow(m, ctx.clone());
                    if !diff.pair(&zm).expect("in range").is_zero() {
                        return CheckOutcome::fail(
                            ID,
                            LABEL,
                            format!("{phi}: dual route fails at n = {n}, m = {m}, γ = {gamma}"),
                        );
                    }
                }
            }
        }
    }
    CheckOutcome::pass(ID, LABEL, "4 fixtures × 2 γ, n, m ≤ 6".into())
}

/// Criterion 7: iterated pairs by closed form vs recursion, and
/// `S²ψ^[k] = ψ^[k]`.
pub fn iterated_pairs(seed: u64) -> CheckOutcome {
    const ID: &str = "C7";
    const LABEL: &str = "iterated Pearson pairs";
    let mut rng = Seeded::new(seed ^ 0x17e7);
    for _ in 0..8 {
        let gamma = rng.scalar();
        let phi = Poly::from_coeffs(vec![rng.scalar(), rng.scalar(), rng.scalar()]);
        let psi = Poly::from_coeffs(vec![rng.scalar(), rng.nonzero_scalar()]);
        let pair = PearsonPair::new(phi, psi, LatticeContext::new(gamma));
        for k in 0..=8 {
            let closed = pair.iterated_pair(k);
            let rec = pair.iterated_pair_by_recursion(k);
            if closed.phi != rec.phi || closed.psi != rec.psi {
                return CheckOutcome::fail(ID, LABEL, format!("closed form != recursion at k = {k}"));
            }
            if closed.psi.average().average() != closed.psi {
                return CheckOutcome::fail(ID, LABEL, format!("S²ψ^[{k}] != ψ^[{k}]"));
            }
        }
    }
    CheckOutcome::pass(ID, LABEL, "8 random pairs, k ≤ 8".into())
}

/// Criterion 8: the five catalog identities, three parameter points each.
pub fn family_identities() -> CheckOutcome {
    const ID: &str = "C8";
    const LABEL: &str = "Meixner/Charlier/Krawtchouk/Hahn/para-Krawtchouk identities";
    let r = ExactScalar::from_ratio;
    let i = ExactScalar::from_int;
    let checks: Vec<IdentityCheck> = vec![
        IdentityCheck::MeixnerH { beta: i(2), c: r(1, 2) },
        IdentityCheck::MeixnerH { beta: i(3), c: r(1, 3) },
        IdentityCheck::MeixnerH { beta: r(1, 2), c: r(3, 4) },
        IdentityCheck::CharlierH { a: i(1) },
        IdentityCheck::CharlierH { a: i(2) },
        IdentityCheck::CharlierH { a: r(5, 2) },
        IdentityCheck::KrawtchoukH { p: r(1, 2), n: 5 },
        IdentityCheck::KrawtchoukH { p: r(1, 3), n: 4 },
        IdentityCheck::KrawtchoukH { p: r(1, 4), n: 6 },
        IdentityCheck::HahnQ { alpha: i(1), beta: i(2), n: 4 },
        IdentityCheck::HahnQ { alpha: i(0), beta: i(0), n: 3 },
        IdentityCheck::HahnQ { alpha: r(1, 2), beta: r(-1, 3), n: 5 },
        IdentityCheck::ParaKrawtchoukQ { mu: r(1, 2), n: 5 },
        IdentityCheck::ParaKrawtchoukQ { mu: r(3, 2), n: 7 },
        IdentityCheck::ParaKrawtchoukQ { mu: r(1, 3), n: 9 },
    ];
    let mut surd_branch_seen = false;
    for check in &checks {
        let report = match verify_identity(check, 10) {
            Ok(r) => r,
            Err(e) => {
                return CheckOutcome::fail(ID, LABEL, format!("{}: {e}", check.id()));
            }
        };
        if !report.passed() {
            return CheckOutcome::fail(
                ID,
                LABEL,
                format!("{} fails at n ∈ {:?}", report.identity, report.failures()),
            );
        }
        if report.branches.len() == 2 {
            surd_branch_seen = true;
            // both root signs are tried and reported; a symmetric family
            // (B ≡ 0, e.g. Krawtchouk at p = 1/2) passes on both
            let passing = report
                .branches
                .iter()
                .filter(|b| b.failures.is_empty())
                .count();
            if passing == 0 {
                return CheckOutcome::fail(
                    ID,
                    LABEL,
                    format!("{}: no root branch matches", report.identity),
                );
            }
        }
    }
    if !surd_branch_seen {
        return CheckOutcome::fail(ID, LABEL, "no surd-bearing identity was exercised".into());
    }
    // Q-symmetry alongside the identities
    for (a, b, c) in [
        (r(1, 2), r(1, 3), r(1, 5)),
        (r(3, 2), r(1, 2), i(0)),
        (i(2), r(2, 3), r(1, 7)),
    ] {
        match crate::families::q_symmetry_check(&a, &b, &c, 10) {
            Ok(true) => {}
            Ok(false) => {
                return CheckOutcome::fail(ID, LABEL, format!("Q symmetry fails at a = {a}"));
            }
            Err(e) => return CheckOutcome::fail(ID, LABEL, format!("Q symmetry: {e}")),
        }
    }
    CheckOutcome::pass(ID, LABEL, format!("{} identity instances, n ≤ 10", checks.len()))
}

/// Criterion 9: classification round trip over descriptors covering all
/// three cases, plus the quartic factorization.
pub fn classification_round_trip() -> CheckOutcome {
    const ID: &str = "C9";
    const LABEL: &str = "classification round trip and quartic factorization";
    let gamma = ExactScalar::from_ratio(1, 3);
    // (name, φ, ψ, horizon for pair-level verification)
    let fixtures: Vec<(&str, &str, &str, usize)> = vec![
        ("case1-a", "-3", "z + 2", 10),
        ("case1-b", "2", "z", 10),
        ("case1-c", "1/2", "z - 1/2", 10),
        ("case2-a", "2*z + 1", "z", 10),
        ("case2-b", "-z + 1/2", "z + 1", 10),
        ("case2-c", "1/2*z - 2", "z + 1/3", 10),
        ("case3-generic", "z^2 + 1889/900", "3*z - 2/15", 10),
        ("case3-zero-c", "z^2 + 15/4", "4*z", 10),
        ("case3-surd", "z^2 - 1", "z + 3/4", 10),
        ("case3-symbolic", "z^2 - 3/8", "z + 1/8", 10),
        // finite family: d_4 = 0 caps the pair-level horizon at 1
        ("case3-para-k", "z^2 + 63/16", "-4*z", 1),
    ];
    for (name, phi, psi, horizon) in &fixtures {
        let pair = fixture_pair(phi, psi, gamma.clone());
        let classification = match classify(&pair) {
            Ok(c) => c,
            Err(e) => return CheckOutcome::fail(ID, LABEL, format!("{name}: {e}")),
        };
        if let Err(n) = classification.verify(&pair, *horizon) {
            return CheckOutcome::fail(
                ID,
                LABEL,
                format!("{name}: reconstructed table differs at n = {n}"),
            );
        }
    }
    // descriptor-level round trip with Q-symmetry tolerance
    let r = ExactScalar::from_ratio;
    let q_grid = [
        (r(3, 2), r(1, 3), r(1, 5)),
        (r(2, 1), r(1, 2), ExactScalar::zero()),
        (r(-2, 1), r(1, 4), ExactScalar::zero()),
    ];
    for (a, b, c) in &q_grid {
        let source = FamilyDescriptor::Q {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        };
        let pair = source
            .pearson_pair(LatticeContext::new(gamma.clone()), None)
            .unwrap()
            .expect("Q pair");
        let classification = match classify(&pair) {
            Ok(c) => c,
            Err(e) => return CheckOutcome::fail(ID, LABEL, format!("Q({a},{b},{c}): {e}")),
        };
        let Some(got) = classification.family.descriptor() else {
            return CheckOutcome::fail(ID, LABEL, format!("Q({a},{b},{c}): symbolic result"));
        };
        let n_hi = 10;
        for n in 0..=n_hi {
            let want = source.raw_bc(n, None);
            let have = got.raw_bc(n, None);
            match (want, have) {
                (Ok(w), Ok(h)) => {
                    if w != h {
                        return CheckOutcome::fail(
                            ID,
                            LABEL,
                            format!("Q({a},{b},{c}): descriptor tables differ at n = {n}"),
                        );
                    }
                }
                (Err(_), Err(_)) => {}
                _ => {
                    return CheckOutcome::fail(
                        ID,
                        LABEL,
                        format!("Q({a},{b},{c}): descriptor validity differs at n = {n}"),
                    );
                }
            }
        }
    }
    // the displayed deg-φ-2 closed forms, straight from their printed
    // shape: B_n = -(2abn² + 2(1-a)bn + (1-2a)e)/((2an-2a+1)(2an+1)) and
    // C_{n+1} = -(n+1)(an-a+1)·φ₄(n)/((2an-a+1)(2an+1)²(2an+a+1)),
    // against the closed-form route (n ≥ 1; n = 0 is their removable hole)
    for (phi, psi) in [
        ("z^2 + 1889/900", "3*z - 2/15"),
        ("z^2 - 1", "z + 3/4"),
        ("z^2 - 3/8", "z + 1/8"),
    ] {
        let pair = fixture_pair(phi, psi, gamma.clone());
        let (b_raw, c_raw) = pair.raw_coefficients(10).expect("admissible");
        let d = pair.d();
        let (a, b, e) = (&pair.a() / &d, &pair.b() / &d, &pair.e() / &d);
        let quartic = classify(&pair).expect("deg 2").quartic.expect("deg 2");
        let phi4 = Poly::from_coeffs(quartic.to_vec());
        let one = ExactScalar::one();
        let two = ExactScalar::from_int(2);
        for n in 1..=10i64 {
            let nn = ExactScalar::from_int(n);
            let two_an = &(&two * &a) * &nn;
            let b_numer = {
                let t1 = &(&(&two * &(&a * &b)) * &nn) * &nn;
                let t2 = &(&(&two * &(&one - &a)) * &b) * &nn;
                let t3 = &(&one - &(&two * &a)) * &e;
                &(&t1 + &t2) + &t3
            };
            let b_denom = &(&(&two_an - &(&two * &a)) + &one) * &(&two_an + &one);
            let b_expect = -&(&b_numer / &b_denom);
            if b_expect != b_raw[n as usize] {
                return CheckOutcome::fail(ID, LABEL, format!("{phi}: B_{n} display form"));
            }
            if (n as usize) < c_raw.len() {
                let c_numer = &(&ExactScalar::from_int(n + 1)
                    * &(&(&(&a * &nn) - &a) + &one))
                    * &phi4.eval(&nn);
                let t = &two_an + &one;
                let c_denom = &(&(&t - &a) * &(&t * &t)) * &(&t + &a);
                let c_expect = -&(&c_numer / &c_denom);
                if c_expect != c_raw[n as usize] {
                    return CheckOutcome::fail(
                        ID,
                        LABEL,
                        format!("{phi}: C_{} display form", n + 1),
                    );
                }
            }
        }
    }
    // quartic factorization asserted coefficient-wise
    for (phi, psi) in [("z^2 - 1", "z + 3/4"), ("z^2", "z"), ("z^2 + 15/4", "4*z")] {
        let pair = fixture_pair(phi, psi, gamma.clone());
        let alphas = match quartic_roots(&pair) {
            Ok(a) => a,
            Err(e) => return CheckOutcome::fail(ID, LABEL, format!("{phi}: {e}")),
        };
        let classification = classify(&pair).expect("deg 2 classifies");
        let q = classification.quartic.expect("deg 2 quartic");
        // the quartic and its roots live on the d-normalized pair
        let a = &pair.a() / &pair.d();
        let lin =
            |s: &ExactScalar, alpha: &ExactScalar| Poly::from_coeffs(vec![alpha.clone(), s.clone()]);
        let prod = &(&(&lin(&a, &alphas[0]) * &lin(&a, &alphas[1])) * &lin(&a, &alphas[2]))
            * &lin(&ExactScalar::one(), &alphas[3]);
        if Poly::from_coeffs(q.to_vec()) != prod.scale(&ExactScalar::from_int(4)) {
            return CheckOutcome::fail(ID, LABEL, format!("{phi}: φ₄ factorization"));
        }
        let one = ExactScalar::one();
        if alphas[2] != &one - &alphas[1] || alphas[3] != &(&one - &alphas[0]) / &a {
            return CheckOutcome::fail(ID, LABEL, format!("{phi}: α consistency relations"));
        }
    }
    // symbolic classification carries the symmetric functions
    let sym_pair = fixture_pair("z^2 - 3/8", "z + 1/8", gamma);
    match classify(&sym_pair).map(|c| c.family) {
        Ok(ClassifiedFamily::QSymmetric {
            r1r2,
            r1sq_plus_r2sq,
            ..
        }) => {
            if r1r2 != ExactScalar::from_ratio(-1, 4)
                || r1sq_plus_r2sq != ExactScalar::from_ratio(5, 2)
            {
                return CheckOutcome::fail(ID, LABEL, "symbolic invariants wrong".into());
            }
        }
        other => {
            return CheckOutcome::fail(ID, LABEL, format!("expected symbolic Q, got {other:?}"));
        }
    }
    CheckOutcome::pass(ID, LABEL, "11 pair fixtures + 3 descriptor round trips".into())
}

/// Criterion 10: the full pipeline yields identical recurrence tables at
/// γ ∈ {0, 1/3, i/2}.
pub fn gamma_independence() -> CheckOutcome {
    const ID: &str = "C10";
    const LABEL: &str = "recurrence tables are independent of γ";
    let n_max = 6;
    for (name, phi, psi) in regular_fixtures() {
        let mut tables: Vec<RecurrenceTable> = Vec::new();
        for gamma in gamma_values() {
            let pair = fixture_pair(phi, psi, gamma.clone());
            // closed forms
            let closed = match pair.recurrence_coeffs(n_max) {
                Ok(t) => t,
                Err(e) => return CheckOutcome::fail(ID, LABEL, format!("{name}: {e}")),
            };
            // full moment → Hankel pipeline at this γ
            let u = match pair.pearson_moments(SigmaScalar::one(), 2 * n_max + 2) {
                Ok(u) => u,
                Err(e) => return CheckOutcome::fail(ID, LABEL, format!("{name}: {e}")),
            };
            let oracle = match hankel_oracle(&u, n_max) {
                Ok(r) => r.table,
                Err(e) => return CheckOutcome::fail(ID, LABEL, format!("{name}: {e}")),
            };
            if oracle.as_ref() != Some(&closed) {
                return CheckOutcome::fail(
                    ID,
                    LABEL,
                    format!("{name}: pipeline disagrees with closed forms at γ = {gamma}"),
                );
            }
            tables.push(closed);
        }
        if tables.windows(2).any(|w| w[0] != w[1]) {
            return CheckOutcome::fail(ID, LABEL, format!("{name}: tables differ across γ"));
        }
    }
    CheckOutcome::pass(ID, LABEL, "6 fixtures at γ ∈ {0, 1/3, i/2}".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generator_is_deterministic() {
        let mut a = Seeded::new(42);
        let mut b = Seeded::new(42);
        for _ in 0..32 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    // the full run_all sweep lives in the dedicated acceptance test
    // target; here a cheap smoke check keeps the module wired up
    #[test]
    fn smoke_iterated_pairs() {
        let outcome = iterated_pairs(7);
        assert!(outcome.passed, "{}", outcome.details);
    }
}
