mod common;

use bergball::arith::{GaussianRational, MultiIndex};
use bergball::symbolic::{apply_first_order, apply_inv_laplacian, BiPolynomial, FirstOrder};
use bergball::wirtinger::{
    eval_jet, eval_jet_in, random_points, verify_pointwise_identity, Expr, Identity, Jet, Side, SideOps,
};
use proptest::prelude::*;

use common::{bipoly, with_dim};

fn same_jet(a: &Jet, b: &Jet, vars: usize, order: u32) -> Result<(), String> {
    for e in MultiIndex::up_to_degree(vars, order) {
        let (x, y) = (a.coeff(e.components()), b.coeff(e.components()));
        if x != y {
            return Err(format!("coefficient {e}: {x:?} vs {y:?}"));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn jets_multiply_like_functions(
        (n, (p, q)) in with_dim(1..=2, |n| (bipoly(n, 3, 3), bipoly(n, 2, 3))),
        seed in 0u64..1000,
    ) {
        let pt = &random_points(n, 1, seed, false)[0];
        // A rational factor keeps the test away from pure polynomial arithmetic.
        let f = Expr::from_bipoly(&p, false);
        let g = (Expr::int(9) + Expr::from_bipoly(&q, true)).recip();
        let fg = eval_jet(&(f.clone() * g.clone()), pt, 3);
        prop_assume!(fg.is_ok());
        let prod = eval_jet(&f, pt, 3).unwrap().mul(&eval_jet(&g, pt, 3).unwrap());
        if let Err(e) = same_jet(&fg.unwrap(), &prod, 4 * n, 3) {
            prop_assert!(false, "{}", e);
        }
    }

    #[test]
    fn jet_derivatives_match_symbolic_operators((n, p) in with_dim(1..=2, |n| bipoly(n, 4, 5)), seed in 0u64..1000) {
        let expr = Expr::from_bipoly(&p, false);
        for pt in random_points(n, 20, seed, true) {
            let ops = SideOps { n, side: Side::Z, pt: &pt };
            let jet = eval_jet_in(&expr, &pt, &Side::Z.space(n, 2)).unwrap();
            let cases = [
                (ops.e(&jet), apply_first_order(FirstOrder::E, &p)),
                (ops.ebar(&jet), apply_first_order(FirstOrder::Ebar, &p)),
                (ops.laplacian(&jet), apply_first_order(FirstOrder::Delta, &p)),
                (ops.inv_laplacian(&jet), apply_inv_laplacian(&p)),
            ];
            for (k, (j, sym)) in cases.iter().enumerate() {
                prop_assert_eq!(j.value(), sym.eval(&pt.z), "operator {} at {}", k, pt);
            }
        }
    }

    #[test]
    fn refutations_name_a_point_that_really_differs(seed in 0u64..1000, scale in 2i64..5) {
        let n = 1 + (seed % 2) as usize;
        let pts = random_points(n, 5, seed, true);
        let s = GaussianRational::from_int(scale);
        for id in [Identity::EDeltaA, Identity::ESDelta(2), Identity::ChainB(1)] {
            let c = verify_pointwise_identity(&id, n, &pts, 0, &s).unwrap();
            prop_assert!(c.failed());
            let w = c.witness.unwrap();
            let pt = pts.iter().find(|p| w.starts_with(&format!("at {p}:"))).expect("witness names a sample point");
            let sides = id.sides(n, pt, 0).unwrap();
            prop_assert_ne!(&sides[0], &(&sides[1] * &s));
        }
    }
}

#[test]
fn standard_suite_holds_at_twenty_points() {
    for n in 1..=2 {
        let pts = random_points(n, 20, 99, true);
        for id in Identity::standard_suite(n) {
            let c = verify_pointwise_identity(&id, n, &pts, 0, &GaussianRational::one()).unwrap();
            assert!(c.passed(), "{c:?}");
        }
    }
}

#[test]
fn polynomial_expression_values_match() {
    let p = BiPolynomial::z(2, 0).mul(&BiPolynomial::zbar(2, 1)).add(&BiPolynomial::norm_sq(2));
    for pt in random_points(2, 5, 3, true) {
        let v = eval_jet(&Expr::from_bipoly(&p, false), &pt, 0).unwrap().value();
        assert_eq!(v, p.eval(&pt.z));
    }
}
