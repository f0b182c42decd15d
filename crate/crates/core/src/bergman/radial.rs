use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};

/// Finite combination of `t^k` and `t^k log t`, `t = |z|^2`.
/// Keys are `(k, has_log)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RadialProfile {
    terms: BTreeMap<(i64, bool), GaussianRational>,
}

impl RadialProfile {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::power(0, GaussianRational::one())
    }

    /// `c t^k`
    pub fn power(k: i64, c: GaussianRational) -> Self {
        let mut r = Self::zero();
        r.add_term(k, false, c);
        r
    }

    /// `c t^k log t`
    pub fn log_power(k: i64, c: GaussianRational) -> Self {
        let mut r = Self::zero();
        r.add_term(k, true, c);
        r
    }

    pub fn add_term(&mut self, k: i64, log: bool, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((k, log)).or_insert_with(GaussianRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(k, log));
        }
    }

    pub fn add(&self, o: &RadialProfile) -> RadialProfile {
        let mut r = self.clone();
        for (&(k, l), c) in &o.terms {
            r.add_term(k, l, c.clone());
        }
        r
    }

    pub fn scale(&self, s: &GaussianRational) -> RadialProfile {
        let mut r = Self::zero();
        for (&(k, l), c) in &self.terms {
            r.add_term(k, l, c * s);
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, bool, &GaussianRational)> {
        self.terms.iter().map(|(&(k, l), c)| (k, l, c))
    }

    pub fn min_power(&self) -> Option<i64> {
        self.terms.keys().map(|&(k, _)| k).min()
    }
}

/// `int_0^1 t^(zeta-1) rho(t) dt`, exact.
pub fn radial_mellin(rho: &RadialProfile, zeta: i64) -> Result<GaussianRational> {
    let mut acc = GaussianRational::zero();
    for (k, log, c) in rho.terms() {
        let p = zeta + k;
        if p <= 0 {
            return Err(Error::NonIntegrable(format!("t^{k} against t^({zeta}-1) on [0,1]")));
        }
        let inv = Rational::new(1.into(), p.into());
        if log {
            acc -= &c.scale(&(&inv * &inv));
        } else {
            acc += c.scale(&inv);
        }
    }
    Ok(acc)
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<_> = self.terms().map(|(k, log, c)| (c.clone(), radial_factors(k, log))).collect();
        f.write_str(&crate::symbolic::join_terms(&items))
    }
}

pub(crate) fn radial_factors(k: i64, log: bool) -> Vec<String> {
    let mut v = Vec::new();
    match k {
        0 => {}
        1 => v.push("t".to_string()),
        _ => v.push(format!("t^{k}")),
    }
    if log {
        v.push("log(t)".to_string());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn g(r: Rational) -> GaussianRational {
        GaussianRational::from_rational(r)
    }

    #[test]
    fn mellin_examples() {
        assert_eq!(radial_mellin(&RadialProfile::one(), 3).unwrap(), g(rat(1, 3)));
        let inv = RadialProfile::power(-1, GaussianRational::one());
        assert_eq!(radial_mellin(&inv, 3).unwrap(), g(rat(1, 2)));
        let lg = RadialProfile::log_power(0, GaussianRational::one());
        assert_eq!(radial_mellin(&lg, 2).unwrap(), g(rat(-1, 4)));
        assert!(matches!(radial_mellin(&inv, 1), Err(Error::NonIntegrable(_))));
    }

    #[test]
    fn display() {
        let r = RadialProfile::one().add(&RadialProfile::log_power(0, GaussianRational::one()));
        assert_eq!(r.to_string(), "1 + log(t)");
        assert_eq!(RadialProfile::power(-1, GaussianRational::from_int(-2)).to_string(), "-2 * t^-1");
    }
}
