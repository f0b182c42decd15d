//! Closed-form moments for the normalized measures on the ball and sphere.
//!
//! `dV(B_N) = 1` and `d sigma(S_N) = 1`.

use num_bigint::BigInt;

use super::gaussian::Rational;
use super::multi_index::{factorial, MultiIndex};

/// `int_{B_N} |z^alpha|^2 dV = N! alpha! / (N + |alpha|)!`
pub fn monomial_norm_sq(alpha: &MultiIndex) -> Rational {
    let n = alpha.dim() as u32;
    Rational::new(factorial(n) * alpha.factorial(), factorial(n + alpha.degree()))
}

/// `int_{S_N} |zeta^mu|^2 d sigma = (N-1)! mu! / (N - 1 + |mu|)!`
pub fn sphere_moment(mu: &MultiIndex) -> Rational {
    let n = mu.dim() as u32;
    assert!(n >= 1, "sphere moments need N >= 1");
    Rational::new(factorial(n - 1) * mu.factorial(), factorial(n - 1 + mu.degree()))
}

/// Coefficient `C_alpha = (N + |alpha|)! / (N! alpha!)` of `z^alpha conj(xi)^alpha`
/// in the expansion of `(1 - <z, xi>)^{-(N+1)}`.
pub fn kernel_coefficient(alpha: &MultiIndex) -> BigInt {
    let n = alpha.dim() as u32;
    factorial(n + alpha.degree()) / (factorial(n) * alpha.factorial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn norm_examples() {
        assert_eq!(monomial_norm_sq(&[0].into()), int(1));
        assert_eq!(monomial_norm_sq(&[1].into()), rat(1, 2));
        assert_eq!(monomial_norm_sq(&[1, 1].into()), rat(1, 12));
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(sphere_moment(&[0, 0].into()), int(1));
        assert_eq!(sphere_moment(&[1, 0].into()), rat(1, 2));
    }

    #[test]
    fn kernel_coefficients() {
        // (1 - x)^{-2} = sum (k + 1) x^k for N = 1
        for k in 0..6 {
            assert_eq!(kernel_coefficient(&[k].into()), BigInt::from(k + 1));
        }
        // N = 2, alpha = (1,1): 4! / (2! 1! 1!) = 12
        assert_eq!(kernel_coefficient(&[1, 1].into()), BigInt::from(12));
    }
}
