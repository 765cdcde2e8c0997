use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use twistk_core::CycNum;

fn cyc() -> impl Strategy<Value = CycNum> {
    (prop::sample::select(vec![1usize, 2, 3, 4, 5, 6, 8, 12]), prop::collection::vec(-4i64..5, 1..4), 0i64..24).prop_map(
        |(n, cs, shift)| {
            cs.iter().enumerate().fold(CycNum::zero(), |acc, (k, &c)| {
                let term = CycNum::root_of_unity(n, shift + k as i64).scale(&BigRational::new(BigInt::from(c), BigInt::from(k as i64 + 1)));
                &acc + &term
            })
        },
    )
}

#[test]
fn roots_of_unity() {
    assert_eq!(CycNum::root_of_unity(4, 2), CycNum::from_int(-1));
    let z3 = CycNum::root_of_unity(3, 1);
    assert_eq!(&(&CycNum::one() + &z3) + &(&z3 * &z3), CycNum::zero());
    assert_eq!(CycNum::root_of_unity(12, 5).conjugate(), CycNum::root_of_unity(12, 7));
}

proptest! {
    #[test]
    fn ring_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
    }

    #[test]
    fn unit_modulus(n in 1usize..30, k in -40i64..40, num in -9i64..10, den in 1i64..7) {
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        let a = CycNum::root_of_unity(n, k).scale(&q);
        let p = &a * &a.conjugate();
        prop_assert_eq!(p.to_rational(), Some(&q * &q));
    }

    #[test]
    fn canonical_forms_are_stable(a in cyc()) {
        let back: CycNum = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(CycNum::from_basis(a.conductor(), a.coeffs().to_vec()).unwrap(), a);
    }
}
