mod common;

use bergball::arith::{monomial_norm_sq, sphere_moment, GaussianRational, MultiIndex, Rational};
use bergball::bergman::{
    berezin_series, operator_equal, series_equal, toeplitz_matrix, toeplitz_product, CoeffSeries, OperatorMatrix,
    QuasiHomSymbol,
};
use bergball::symbolic::BiPolynomial;
use proptest::prelude::*;

use common::{holomorphic, multi_index, small_int, with_dim};

/// Sum of up to three integrable terms `c z^a zbar^b t^k (log t)^e`.
fn symbol(n: usize) -> impl Strategy<Value = QuasiHomSymbol> {
    prop::collection::vec((multi_index(n, 2), multi_index(n, 2), -1i64..=1, any::<bool>(), small_int()), 1..=3)
        .prop_map(move |ts| {
            let mut s = QuasiHomSymbol::zero(n);
            for (a, b, k, log, c) in ts {
                if let Ok(t) = QuasiHomSymbol::term(n, c, a, b, k, log) {
                    s = s.add(&t).unwrap();
                }
            }
            s
        })
}

fn monomial_symbol(n: usize, hol: bool, anti: bool) -> impl Strategy<Value = BiPolynomial> {
    (multi_index(n, 2), multi_index(n, 2), small_int()).prop_map(move |(a, b, c)| {
        let a = if hol { a } else { MultiIndex::zero(n) };
        let b = if anti { b } else { MultiIndex::zero(n) };
        BiPolynomial::monomial(n, c, a, b)
    })
}

/// `int u dV` term by term in polar coordinates: only `a = b` survives, and
/// `N int_0^1 s^(N-1+|a|+k) (log s)^e ds` is `N/m` or `-N/m^2` with `m = N+|a|+k`.
fn ball_integral(u: &QuasiHomSymbol) -> GaussianRational {
    let n = u.dim() as i64;
    let mut acc = GaussianRational::zero();
    for (key, c) in u.terms() {
        if key.a != key.b {
            continue;
        }
        let m = n + key.a.degree() as i64 + key.k;
        let radial =
            if key.log { Rational::new((-n).into(), (m * m).into()) } else { Rational::new(n.into(), m.into()) };
        acc += &c.scale(&(radial * sphere_moment(&key.a)));
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn adjoint_is_the_conjugate_symbol((n, u) in with_dim(1..=2, symbol)) {
        let d = 4;
        let t = toeplitz_matrix(&u, d).unwrap();
        let tc = toeplitz_matrix(&u.conj(), d).unwrap();
        let idx = MultiIndex::up_to_degree(n, d);
        for a in &idx {
            for g in &idx {
                let lhs = t.entry(g, a).scale(&monomial_norm_sq(g));
                let rhs = tc.entry(a, g).scale(&monomial_norm_sq(a)).conj();
                prop_assert_eq!(lhs, rhs, "alpha={} gamma={} u={}", a, g, u);
            }
        }
    }

    #[test]
    fn holomorphic_right_factor_multiplies_symbols(
        (n, (phi, psi, anti_phi)) in with_dim(1..=2, |n| (monomial_symbol(n, true, true), monomial_symbol(n, true, false), monomial_symbol(n, false, true))),
        d in 2u32..=5,
    ) {
        let q = QuasiHomSymbol::from_bipoly;
        // psi holomorphic
        let c = operator_equal(&toeplitz_product(&q(&phi), &q(&psi), d).unwrap(), &toeplitz_matrix(&q(&phi.mul(&psi)), d).unwrap(), d).unwrap();
        prop_assert!(c.passed(), "N={} {:?}", n, c.witness);
        // phi antiholomorphic
        let c = operator_equal(&toeplitz_product(&q(&anti_phi), &q(&phi), d).unwrap(), &toeplitz_matrix(&q(&anti_phi.mul(&phi)), d).unwrap(), d).unwrap();
        prop_assert!(c.passed(), "N={} {:?}", n, c.witness);
    }

    #[test]
    fn berezin_at_origin_is_the_integral((n, u) in with_dim(1..=3, symbol)) {
        let s = berezin_series(&u, 2).unwrap();
        let z = MultiIndex::zero(n);
        prop_assert_eq!(s.coeff(&z, &z).unwrap_or_else(GaussianRational::zero), ball_integral(&u));
    }

    #[test]
    fn berezin_fixes_pluriharmonic((n, (f, g)) in with_dim(1..=2, |n| (holomorphic(n, 4, 4), holomorphic(n, 4, 4)))) {
        let p = f.add(&g.conj());
        let d = 5;
        let c = series_equal(&berezin_series(&QuasiHomSymbol::from_bipoly(&p), d).unwrap(), &CoeffSeries::from_bipoly(&p, d)).unwrap();
        prop_assert!(c.passed(), "N={} {:?}", n, c.witness);
    }

    #[test]
    fn series_coefficients_do_not_move_with_degree((_n, u) in with_dim(1..=2, symbol), d in 1u32..=4) {
        let lo = berezin_series(&u, d).unwrap();
        let hi = berezin_series(&u, d + 2).unwrap();
        prop_assert_eq!(hi.truncate(d), lo);
    }

    #[test]
    fn operator_columns_do_not_move_with_degree((n, u) in with_dim(1..=2, symbol), d in 1u32..=4) {
        let lo = toeplitz_matrix(&u, d).unwrap();
        let hi = toeplitz_matrix(&u, d + 2).unwrap();
        for a in MultiIndex::up_to_degree(n, d) {
            for g in MultiIndex::up_to_degree(n, d + 4) {
                prop_assert_eq!(lo.entry(&g, &a), hi.entry(&g, &a));
            }
        }
    }
}

#[test]
fn matrix_json_roundtrip() {
    let u = QuasiHomSymbol::parse("z^(1,0)*zbar^(0,1) + 1/2*log(t)", Some(2)).unwrap();
    let m = toeplitz_matrix(&u, 3).unwrap();
    assert_eq!(OperatorMatrix::from_json(&m.to_json()).unwrap(), m);
    let s = berezin_series(&u, 3).unwrap();
    assert_eq!(CoeffSeries::from_json(&s.to_json()).unwrap(), s);
    assert_eq!(QuasiHomSymbol::from_json(&u.to_json()).unwrap(), u);
}
