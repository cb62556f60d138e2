use exceptcheck::exactnum::{parse_literal, ratio, CyclotomicNumber};
use proptest::prelude::*;

fn cyclotomic() -> impl Strategy<Value = CyclotomicNumber> {
    let conductors = prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 20, 21, 24]);
    (conductors, prop::collection::vec((0i64..48, -6i64..=6, 1i64..=4), 0..5)).prop_map(|(n, terms)| {
        let parts: Vec<CyclotomicNumber> = terms
            .into_iter()
            .map(|(k, num, den)| CyclotomicNumber::root_of_unity(n, k).scale(&ratio(num, den)))
            .collect();
        CyclotomicNumber::sum(&parts)
    })
}

proptest! {
    #[test]
    fn addition_is_associative(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_distributes(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn multiplication_is_associative_and_commutative(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn equal_values_have_identical_forms(a in cyclotomic(), b in cyclotomic()) {
        let left = &(&a + &b) - &b;
        prop_assert_eq!(format!("{left:?}"), format!("{a:?}"));
        prop_assert_eq!(left.conductor(), a.conductor());
    }

    #[test]
    fn display_round_trips(a in cyclotomic()) {
        prop_assert_eq!(parse_literal(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in cyclotomic(), b in cyclotomic()) {
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!(a.norm_squared().conjugate(), a.norm_squared());
    }

    #[test]
    fn inverse_is_two_sided(a in cyclotomic()) {
        match a.inverse() {
            Some(inv) => prop_assert_eq!(&a * &inv, CyclotomicNumber::one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn embedding_round_trip(a in cyclotomic(), m in 1u32..5) {
        let big = a.conductor() * m;
        let terms = a.embed(big).unwrap();
        prop_assert_eq!(CyclotomicNumber::from_terms(big, terms), a);
    }
}
