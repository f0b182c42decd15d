mod common;

use bergball::arith::GaussianRational;
use bergball::bhsuite::{
    bh_facts, random_bh_scenario, split_pluriharmonic, verify_bh_scenario, zero_product_check, BHScenario,
};
use bergball::symbolic::{BiPolynomial, Monomial};
use bergball::Error;
use proptest::prelude::*;

use common::{bipoly, holomorphic, with_dim};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn operator_identity_iff_both_conditions(seed in 0u64..10_000, n in 1usize..=2) {
        let sc = random_bh_scenario(seed, n).unwrap();
        let f = bh_facts(&sc, 5).unwrap();
        prop_assert!(f.consistent(), "seed {} N={}: {:?}", seed, n, f);
        if seed % 2 == 0 {
            prop_assert!(f.operator_identity.passed());
        }
    }

    #[test]
    fn scenario_json_roundtrips(seed in 0u64..10_000, n in 1usize..=2) {
        let sc = random_bh_scenario(seed, n).unwrap();
        let back = BHScenario::from_json(&sc.to_json()).unwrap();
        prop_assert_eq!(verify_bh_scenario(&back, 3).unwrap(), verify_bh_scenario(&sc, 3).unwrap());
        prop_assert_eq!(back.to_json(), sc.to_json());
    }

    #[test]
    fn products_of_nonzero_toeplitz_operators_are_nonzero(seed in 0u64..10_000, n in 1usize..=2) {
        let c = zero_product_check(n, 3, seed).unwrap();
        prop_assert!(c.passed(), "{:?}", c);
    }

    #[test]
    fn split_inverts_f_plus_conj_g((n, (f, g)) in with_dim(1..=3, |n| (holomorphic(n, 3, 4), holomorphic(n, 3, 4)))) {
        let g = g.sub(&BiPolynomial::constant(n, g.at_zero()));
        let pair = split_pluriharmonic(&f.add(&g.conj())).unwrap();
        prop_assert_eq!(pair.f, f);
        prop_assert_eq!(pair.g, g);
    }

    #[test]
    fn split_rejects_mixed_terms((n, p) in with_dim(1..=2, |n| bipoly(n, 3, 4))) {
        let mixed = p.terms().any(|(m, _): (&Monomial, &GaussianRational)| m.is_mixed());
        match split_pluriharmonic(&p) {
            Ok(pair) => {
                prop_assert!(!mixed);
                prop_assert_eq!(pair.to_bipoly(), p);
            }
            Err(Error::NotPluriharmonic(_)) => prop_assert!(mixed, "N={}", n),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
