//! The Euler-type operators `E`, `Ebar`, the Laplacian `Delta`, their shifted
//! products, the invariant Laplacian and the order-raising operator `D_m`.

use serde::{Deserialize, Serialize};

use super::bipoly::{BiPolynomial, Monomial};
use super::univariate::pm_polynomial;
use crate::arith::{factorial, GaussianRational, Rational};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FirstOrder {
    /// `E = sum z_j d/dz_j`
    E,
    /// `Ebar = sum zbar_j d/dzbar_j`
    Ebar,
    /// `Delta = sum d^2/dz_j dzbar_j`
    Delta,
}

/// How `D_m` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DMode {
    /// Product of shifted pairs `(|E+s|^2 - Delta)` for `s = 0..=m`.
    Chain,
    /// `(m!)^2 p_m(invariant Laplacian)` followed by exact division by `h^(m+1)`.
    PmForm,
}

/// Which end of the chain acts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainOrder {
    /// The `s = 0` factor acts first. This is the convention used everywhere.
    ZeroFirst,
    /// Reversed order, kept only as a negative control.
    ZeroLast,
}

pub fn apply_first_order(kind: FirstOrder, p: &BiPolynomial) -> BiPolynomial {
    let n = p.dim();
    match kind {
        FirstOrder::E | FirstOrder::Ebar => BiPolynomial::from_terms(
            n,
            p.terms().map(|(m, c)| {
                let d = if kind == FirstOrder::E { m.alpha.degree() } else { m.beta.degree() };
                (m.clone(), c * &GaussianRational::from_int(d as i64))
            }),
        ),
        FirstOrder::Delta => {
            let mut out = BiPolynomial::zero(n);
            for (m, c) in p.terms() {
                for j in 0..n {
                    let w = m.alpha.get(j) * m.beta.get(j);
                    if w == 0 {
                        continue;
                    }
                    let mm = Monomial::new(m.alpha.dec(j).unwrap(), m.beta.dec(j).unwrap());
                    out.add_term(mm, c * &GaussianRational::from_int(w as i64));
                }
            }
            out
        }
    }
}

/// `(E+s)(Ebar+s)p - Delta p`
pub fn apply_shifted_pair(s: &Rational, p: &BiPolynomial) -> BiPolynomial {
    let n = p.dim();
    let diag = BiPolynomial::from_terms(
        n,
        p.terms().map(|(m, c)| {
            let a = Rational::from_integer(m.alpha.degree().into()) + s;
            let b = Rational::from_integer(m.beta.degree().into()) + s;
            (m.clone(), c.scale(&(a * b)))
        }),
    );
    diag.sub(&apply_first_order(FirstOrder::Delta, p))
}

/// `(1 - |z|^2)(Delta p - E Ebar p)`
pub fn apply_inv_laplacian(p: &BiPolynomial) -> BiPolynomial {
    let n = p.dim();
    let eeb = apply_first_order(FirstOrder::E, &apply_first_order(FirstOrder::Ebar, p));
    let inner = apply_first_order(FirstOrder::Delta, p).sub(&eeb);
    BiPolynomial::defining(n).mul(&inner)
}

/// The chain `(|E+m|^2 - Delta) ... (|E|^2 - Delta) p` in the requested order.
pub fn apply_chain(m: u32, p: &BiPolynomial, order: ChainOrder) -> BiPolynomial {
    let shifts: Vec<u32> = match order {
        ChainOrder::ZeroFirst => (0..=m).collect(),
        ChainOrder::ZeroLast => (0..=m).rev().collect(),
    };
    shifts.into_iter().fold(p.clone(), |acc, s| apply_shifted_pair(&Rational::from_integer(s.into()), &acc))
}

/// `(m!)^2 p_m(inv_laplacian) p`, before dividing by `h^(m+1)`.
pub fn apply_pm(m: u32, p: &BiPolynomial) -> BiPolynomial {
    let n = p.dim();
    let f = Rational::from_integer(factorial(m));
    let poly = pm_polynomial(m, n).scale(&(&f * &f));
    let mut out = BiPolynomial::zero(n);
    let mut power = p.clone();
    for (k, c) in poly.coeffs().iter().enumerate() {
        if k > 0 {
            power = apply_inv_laplacian(&power);
        }
        out = out.add(&power.scale_rational(c));
    }
    out
}

pub fn apply_d(m: u32, p: &BiPolynomial, mode: DMode) -> Result<BiPolynomial> {
    match mode {
        DMode::Chain => Ok(apply_chain(m, p, ChainOrder::ZeroFirst)),
        DMode::PmForm => {
            let mut q = apply_pm(m, p);
            for _ in 0..=m {
                q = q.div_by_defining()?;
            }
            Ok(q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn zzb() -> BiPolynomial {
        BiPolynomial::z(1, 0).mul(&BiPolynomial::zbar(1, 0))
    }

    fn c(n: usize, v: i64) -> BiPolynomial {
        BiPolynomial::constant(n, GaussianRational::from_int(v))
    }

    #[test]
    fn first_order_examples() {
        let z = BiPolynomial::z(1, 0);
        let p = z.mul(&z).mul(&BiPolynomial::zbar(1, 0));
        assert_eq!(apply_first_order(FirstOrder::E, &p), p.scale(&GaussianRational::from_int(2)));
        let q = BiPolynomial::z(2, 0).mul(&BiPolynomial::zbar(2, 0));
        assert_eq!(apply_first_order(FirstOrder::Delta, &q), c(2, 1));
        assert!(apply_first_order(FirstOrder::Delta, &c(2, 7)).is_zero());
    }

    #[test]
    fn shifted_pair_examples() {
        assert_eq!(apply_shifted_pair(&int(0), &zzb()), zzb().sub(&c(1, 1)));
        assert_eq!(apply_shifted_pair(&int(2), &c(1, 1)), c(1, 4));
        let z = BiPolynomial::z(1, 0);
        assert_eq!(apply_shifted_pair(&int(1), &z), z.scale(&GaussianRational::from_int(2)));
    }

    #[test]
    fn inv_laplacian_examples() {
        assert!(apply_inv_laplacian(&c(1, 1)).is_zero());
        assert!(apply_inv_laplacian(&BiPolynomial::z(1, 0)).is_zero());
        let h = BiPolynomial::defining(1);
        assert_eq!(apply_inv_laplacian(&h), h.mul(&h).neg());
    }

    #[test]
    fn d_examples() {
        let expect = zzb().sub(&c(1, 1));
        assert_eq!(apply_d(0, &zzb(), DMode::Chain).unwrap(), expect);
        assert_eq!(apply_d(0, &zzb(), DMode::PmForm).unwrap(), expect);
        for n in 1..=3 {
            for mode in [DMode::Chain, DMode::PmForm] {
                assert!(apply_d(n as u32, &c(n, 1), mode).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn chain_modes_agree_on_monomials() {
        let h = BiPolynomial::defining(2);
        let q = BiPolynomial::z(2, 0).pow(2).mul(&BiPolynomial::zbar(2, 1)).mul(&h);
        for m in 0..=2 {
            assert_eq!(apply_d(m, &q, DMode::Chain).unwrap(), apply_d(m, &q, DMode::PmForm).unwrap());
        }
    }
}
