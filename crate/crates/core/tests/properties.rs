//! Property tests for the exact-arithmetic layers: field axioms, Galois
//! action laws, pairing bilinearity, and block-monoid closure.

use proptest::prelude::*;

use sepinv_core::blockmonoid::{enumerate_block_elements, is_product_one};
use sepinv_core::budget::Budgets;
use sepinv_core::cyclotomic::{euler_phi, Cyclotomic, GaloisAutomorphism};
use sepinv_core::group::{enumerate_characters, enumerate_elements, pairing, GroupSpec};
use sepinv_core::rational::rat;

fn orders() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![1u64, 2, 3, 4, 5, 6, 8, 12])
}

fn cyclotomic(order: u64) -> impl Strategy<Value = Cyclotomic> {
    let phi = euler_phi(order) as usize;
    prop::collection::vec((-6i64..=6, 1i64..=3), phi).prop_map(move |coeffs| {
        Cyclotomic::from_reduced_coeffs(order, coeffs.into_iter().map(|(n, d)| rat(n, d)).collect())
            .unwrap()
    })
}

fn units(order: u64) -> impl Strategy<Value = u64> {
    (0..order.max(1)).prop_filter_map("unit", move |k| {
        if num_integer::gcd(k, order) == 1 {
            Some(k)
        } else {
            None
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((order, seed) in orders().prop_flat_map(|n| (Just(n), (cyclotomic(n), cyclotomic(n), cyclotomic(n))))) {
        let (n, (a, b, c)) = (order, seed);
        // associativity and commutativity
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        // distributivity
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        // inverses
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
        }
        prop_assert!(a.sub(&a).unwrap().is_zero());
        let _ = n;
    }

    #[test]
    fn galois_is_field_automorphism(
        (order, data) in orders().prop_flat_map(|n| (Just(n), (cyclotomic(n), cyclotomic(n), units(n))))
    ) {
        let (a, b, k) = data;
        let sigma = GaloisAutomorphism::new(order, k).unwrap();
        prop_assert_eq!(
            sigma.apply(&a.add(&b).unwrap()).unwrap(),
            sigma.apply(&a).unwrap().add(&sigma.apply(&b).unwrap()).unwrap()
        );
        prop_assert_eq!(
            sigma.apply(&a.mul(&b).unwrap()).unwrap(),
            sigma.apply(&a).unwrap().mul(&sigma.apply(&b).unwrap()).unwrap()
        );
    }

    #[test]
    fn galois_composition(
        (order, data) in orders().prop_flat_map(|n| (Just(n), (cyclotomic(n), units(n), units(n))))
    ) {
        let (a, k1, k2) = data;
        let s1 = GaloisAutomorphism::new(order, k1).unwrap();
        let s2 = GaloisAutomorphism::new(order, k2).unwrap();
        let composed = s1.compose(&s2).unwrap();
        prop_assert_eq!(
            composed.apply(&a).unwrap(),
            s1.apply(&s2.apply(&a).unwrap()).unwrap()
        );
    }

    #[test]
    fn galois_descent_detects_rationals(
        (order, a) in orders().prop_flat_map(|n| (Just(n), cyclotomic(n)))
    ) {
        // fixed by every unit iff rational
        let fixed_by_all = (0..order)
            .filter(|&k| num_integer::gcd(k, order) == 1)
            .all(|k| {
                let sigma = GaloisAutomorphism::new(order, k).unwrap();
                sigma.apply(&a).unwrap() == a
            });
        prop_assert_eq!(fixed_by_all, a.is_rational());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn pairing_respects_character_product(
        (gi, gj, ci, cj) in (0usize..8, 0usize..8, 0usize..8, 0usize..8)
    ) {
        let spec = GroupSpec::new(vec![2, 4]).unwrap();
        let chars = enumerate_characters(&spec);
        let els = enumerate_elements(&spec);
        let chi = &chars[ci];
        let rho = &chars[cj];
        let g = &els[gi];
        let h = &els[gj];
        // multiplicative in the character: (chi * rho)(g) = chi(g) rho(g)
        let lhs = pairing(&chi.add(rho, &spec), g, &spec).unwrap();
        let rhs = pairing(chi, g, &spec).unwrap().mul(&pairing(rho, g, &spec).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        // multiplicative in the element
        let lhs = pairing(chi, &g.add(h, &spec), &spec).unwrap();
        let rhs = pairing(chi, g, &spec).unwrap().mul(&pairing(chi, h, &spec).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn block_elements_are_nonnegative_product_one(d in 0u64..=4) {
        let spec = GroupSpec::new(vec![2, 3]).unwrap();
        let blocks = enumerate_block_elements(&spec, d, &Budgets::default()).unwrap();
        for b in &blocks {
            prop_assert!(b.is_nonnegative());
            prop_assert!(b.length() <= d);
            prop_assert!(is_product_one(b, &spec));
        }
        // zero sequence always present
        prop_assert!(blocks.iter().any(|b| b.is_zero()));
    }
}
