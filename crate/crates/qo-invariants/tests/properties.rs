//! Algebraic laws of the building blocks, checked on random values.

mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use qo_invariants::branch::derive;
use qo_invariants::zeta::CycloProduct;
use qo_invariants::Axis;

fn arb_cyclo() -> impl Strategy<Value = CycloProduct> {
    proptest::collection::vec(
        (1i64..=24, (-6i64..=6).prop_filter("nonzero", |e| *e != 0)),
        0..6,
    )
    .prop_map(|factors| {
        CycloProduct::from_factors(
            factors
                .into_iter()
                .map(|(a, e)| (BigInt::from(a), BigInt::from(e))),
        )
    })
}

proptest! {
    #[test]
    fn mul_is_commutative_and_associative(
        p in arb_cyclo(), q in arb_cyclo(), r in arb_cyclo(),
    ) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&CycloProduct::one()), p);
    }

    #[test]
    fn substitution_laws(p in arb_cyclo(), q in arb_cyclo(), a in 1i64..=9, b in 1i64..=9) {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        prop_assert_eq!(
            p.substitute(&a).substitute(&b),
            p.substitute(&(&a * &b))
        );
        prop_assert_eq!(
            p.mul(&q).substitute(&a),
            p.substitute(&a).mul(&q.substitute(&a))
        );
        prop_assert_eq!(p.substitute(&BigInt::from(1)), p);
    }

    #[test]
    fn multiplicity_and_degree_are_homomorphisms(
        p in arb_cyclo(), q in arb_cyclo(), k in -5i64..=5, b in 1i64..=9,
    ) {
        let k = BigInt::from(k);
        let b = BigInt::from(b);
        prop_assert_eq!(
            p.mul(&q).tm1_multiplicity(),
            p.tm1_multiplicity() + q.tm1_multiplicity()
        );
        prop_assert_eq!(p.pow(&k).tm1_multiplicity(), p.tm1_multiplicity() * &k);
        prop_assert_eq!(
            p.mul(&q).degree_sum(),
            p.degree_sum() + q.degree_sum()
        );
        prop_assert_eq!(p.pow(&k).degree_sum(), p.degree_sum() * &k);
        // substitution rescales the degree but not the multiplicity
        prop_assert_eq!(p.substitute(&b).degree_sum(), p.degree_sum() * &b);
        prop_assert_eq!(p.substitute(&b).tm1_multiplicity(), p.tm1_multiplicity());
    }

    #[test]
    fn normal_form_is_additive_under_mul(p in arb_cyclo(), q in arb_cyclo()) {
        let mut expected = p.cyclotomic_normal_form();
        for (d, e) in q.cyclotomic_normal_form() {
            let entry = expected.entry(d).or_insert_with(|| BigInt::from(0));
            *entry += e;
        }
        expected.retain(|_, e| *e != BigInt::from(0));
        prop_assert_eq!(p.mul(&q).cyclotomic_normal_form(), expected);
    }

    #[test]
    fn derive_shrinks_by_one_and_preserves_validity(
        tuple in common::arb_valid_tuple(4), which in 0..2usize,
    ) {
        let axis = [Axis::One, Axis::Two][which];
        if tuple.len() == 1 {
            prop_assert!(derive(&tuple, axis).is_err());
        } else {
            let derived = derive(&tuple, axis).unwrap();
            prop_assert_eq!(derived.len(), tuple.len() - 1);
            prop_assert!(derived.validate(false).is_ok(), "derived = {}", derived);
        }
    }
}
