//! Shared proptest strategies.
#![allow(dead_code)]

use bergball::arith::{rat, GaussianRational, MultiIndex};
use bergball::symbolic::{BiPolynomial, Monomial};
use proptest::prelude::*;

pub fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-9i64..=9, 1i64..=6, -9i64..=9, 1i64..=6).prop_map(|(a, b, c, d)| GaussianRational::new(rat(a, b), rat(c, d)))
}

pub fn small_int() -> impl Strategy<Value = GaussianRational> {
    (-3i64..=3, -2i64..=2).prop_map(|(a, b)| GaussianRational::new(rat(a, 1), rat(b, 1)))
}

pub fn multi_index(n: usize, max_deg: u32) -> impl Strategy<Value = MultiIndex> {
    let all = MultiIndex::up_to_degree(n, max_deg);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

/// Sparse polynomial in `z, zbar` with total degree at most `max_deg`.
pub fn bipoly(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = BiPolynomial> {
    prop::collection::vec((multi_index(n, max_deg), multi_index(n, max_deg), small_int()), 0..=max_terms).prop_map(
        move |ts| {
            let mut p = BiPolynomial::zero(n);
            for (a, b, c) in ts {
                if a.degree() + b.degree() <= max_deg {
                    p.add_term(Monomial::new(a, b), c);
                }
            }
            p
        },
    )
}

pub fn holomorphic(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = BiPolynomial> {
    prop::collection::vec((multi_index(n, max_deg), small_int()), 0..=max_terms).prop_map(move |ts| {
        let mut p = BiPolynomial::zero(n);
        for (a, c) in ts {
            p.add_term(Monomial::new(a, MultiIndex::zero(n)), c);
        }
        p
    })
}

/// Dimension paired with a value generated for it.
pub fn with_dim<S: Strategy, F: Fn(usize) -> S>(
    dims: std::ops::RangeInclusive<usize>,
    f: F,
) -> impl Strategy<Value = (usize, S::Value)> {
    dims.prop_flat_map(move |n| (Just(n), f(n)))
}
