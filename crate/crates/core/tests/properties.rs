//! Property tests for the exact scalar field and the serialization
//! round trips.

use proptest::prelude::*;

use bilattice_core::families::AffineMap;
use bilattice_core::scalar::{ExactScalar, GaussRational, Rational};
use bilattice_core::sigma::{LatticeContext, SigmaPoly};
use bilattice_core::FamilyDescriptor;

fn rational() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn gauss() -> impl Strategy<Value = GaussRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussRational::new(re, im))
}

/// Scalars drawn from a single extension context (D = 2), including pure
/// Gaussian rationals.
fn scalar() -> impl Strategy<Value = ExactScalar> {
    (gauss(), gauss(), prop::bool::ANY).prop_map(|(base, surd, pure)| {
        if pure {
            ExactScalar::gauss(base)
        } else {
            ExactScalar::with_surd(base, surd, GaussRational::from_int(2))
        }
    })
}

proptest! {
    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn sqrt_square_round_trip(a in scalar()) {
        let sq = &a * &a;
        if let Some(root) = sq.sqrt_same_context() {
            prop_assert_eq!(&root * &root, sq);
        }
    }

    #[test]
    fn sqrt_any_squares_back(g in gauss()) {
        let v = ExactScalar::gauss(g);
        let root = ExactScalar::sqrt_any(&v);
        prop_assert_eq!(&root * &root, v);
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        let text = a.to_string();
        let back: ExactScalar = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn sigma_poly_json_round_trip(
        even in prop::collection::vec(gauss(), 0..5),
        odd in prop::collection::vec(gauss(), 0..5),
        gamma in gauss(),
    ) {
        let ctx = LatticeContext::new(ExactScalar::gauss(gamma));
        let f = SigmaPoly::new(
            bilattice_core::Poly::from_coeffs(
                even.into_iter().map(ExactScalar::gauss).collect(),
            ),
            bilattice_core::Poly::from_coeffs(
                odd.into_iter().map(ExactScalar::gauss).collect(),
            ),
            ctx,
        );
        let json = serde_json::to_string(&f).unwrap();
        let back: SigmaPoly = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &f);
        // byte-identical re-serialization
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn affine_transform_preserves_regularity(
        lam_n in 1i64..=9, lam_d in 1i64..=9, mu_n in -9i64..=9,
        a in 1i64..=4,
    ) {
        // C' = λ²C never vanishes when C does not; round trip restores
        let h = FamilyDescriptor::H {
            a: ExactScalar::zero(),
            b: ExactScalar::from_int(a),
        };
        let table = h.recurrence(6, None).unwrap();
        let map = AffineMap::new(
            ExactScalar::from_ratio(lam_n, lam_d),
            ExactScalar::from_ratio(mu_n, 3),
        )
        .unwrap();
        let image = map.apply(&table);
        prop_assert!(image.c_all().iter().all(|c| !c.is_zero()));
        prop_assert_eq!(map.inverse().apply(&image), table);
    }
}
