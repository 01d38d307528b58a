use num_bigint::BigInt;
use proptest::prelude::*;

use unitary_chow_core::exact::Integer;
use unitary_chow_core::flag::{FlagClass, FlagRing, SignedPermutation};
use unitary_chow_core::milnor::{embed, MilnorRing};
use unitary_chow_core::unitary::UnitaryGrassmannian;

fn class(ring: &std::sync::Arc<FlagRing>, coeffs: &[i64]) -> FlagClass {
    let v: Vec<Integer> = (0..ring.rank()).map(|i| BigInt::from(coeffs[i % coeffs.len()])).collect();
    ring.from_coeffs(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn flag_ring_axioms(a in prop::collection::vec(-3i64..=3, 1..8), b in prop::collection::vec(-3i64..=3, 1..8), c in prop::collection::vec(-3i64..=3, 1..8)) {
        let r = FlagRing::new(4).unwrap();
        let (x, y, z) = (class(&r, &a), class(&r, &b), class(&r, &c));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn sigma_is_a_ring_involution(a in prop::collection::vec(-3i64..=3, 1..8), b in prop::collection::vec(-3i64..=3, 1..8)) {
        let r = FlagRing::new(4).unwrap();
        let s = SignedPermutation::sigma(&r);
        let (x, y) = (class(&r, &a), class(&r, &b));
        prop_assert_eq!(s.apply(&s.apply(&x)), x.clone());
        prop_assert_eq!(s.apply(&(&x * &y)), &s.apply(&x) * &s.apply(&y));
    }

    #[test]
    fn steenrod_lift_is_multiplicative_mod_2(a in prop::collection::vec(-3i64..=3, 1..8), b in prop::collection::vec(-3i64..=3, 1..8)) {
        let r = FlagRing::new(4).unwrap();
        let (x, y) = (class(&r, &a), class(&r, &b));
        let lhs = r.steenrod_total(&(&x * &y));
        let rhs = &r.steenrod_total(&x) * &r.steenrod_total(&y);
        prop_assert!(lhs.eq_mod2(&rhs));
    }

    #[test]
    fn milnor_embedding_is_a_ring_map(i in 0usize..4, j in 0usize..3, p in 0usize..4, q in 0usize..3) {
        let m = MilnorRing::new(4).unwrap();
        let f = FlagRing::new(4).unwrap();
        let (x, y) = (m.monomial(i, j), m.monomial(p, q));
        prop_assert_eq!(embed(&(&x * &y), &f), &embed(&x, &f) * &embed(&y, &f));
        prop_assert_eq!(embed(&x.sigma(), &f), SignedPermutation::sigma(&f).apply(&embed(&x, &f)));
    }
}

#[test]
fn flag_pairing_is_unimodular() {
    for n in 2..=4 {
        assert!(FlagRing::new(n).unwrap().pairing_is_unimodular(), "n = {n}");
    }
}

#[test]
fn unitary_grassmannians_have_the_expected_dimension() {
    for (n, k) in [(4, 1), (4, 2), (5, 1), (5, 2), (6, 3)] {
        let h = UnitaryGrassmannian::new(n, k).unwrap();
        assert_eq!(h.dim(), k * (2 * n - 3 * k));
        assert_eq!(h.subring().top_codim(), h.dim());
    }
    assert!(UnitaryGrassmannian::new(4, 3).is_err());
}
