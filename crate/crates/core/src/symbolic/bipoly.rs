use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{multinomial, GaussianRational, MultiIndex, Rational};
use crate::error::{Error, Result};

/// The monomial `z^alpha zbar^beta`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
}

impl Monomial {
    pub fn new(alpha: MultiIndex, beta: MultiIndex) -> Self {
        Monomial { alpha, beta }
    }

    pub fn one(dim: usize) -> Self {
        Monomial { alpha: MultiIndex::zero(dim), beta: MultiIndex::zero(dim) }
    }

    pub fn degree(&self) -> u32 {
        self.alpha.degree() + self.beta.degree()
    }

    pub fn is_mixed(&self) -> bool {
        !self.alpha.is_zero() && !self.beta.is_zero()
    }

    pub fn conj(&self) -> Monomial {
        Monomial { alpha: self.beta.clone(), beta: self.alpha.clone() }
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial { alpha: self.alpha.add(&o.alpha), beta: self.beta.add(&o.beta) }
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.alpha.cmp(&o.alpha)).then_with(|| self.beta.cmp(&o.beta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Finitely supported series in `z` and `zbar`, treated as independent
/// commuting variables, with coefficients in `Q(i)`. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPolynomial {
    dim: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl BiPolynomial {
    pub fn zero(dim: usize) -> Self {
        BiPolynomial { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: GaussianRational) -> Self {
        Self::monomial(dim, c, MultiIndex::zero(dim), MultiIndex::zero(dim))
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, GaussianRational::one())
    }

    pub fn monomial(dim: usize, c: GaussianRational, alpha: MultiIndex, beta: MultiIndex) -> Self {
        assert_eq!(alpha.dim(), dim);
        assert_eq!(beta.dim(), dim);
        let mut p = Self::zero(dim);
        p.add_term(Monomial { alpha, beta }, c);
        p
    }

    /// The coordinate `z_j` (zero based).
    pub fn z(dim: usize, j: usize) -> Self {
        Self::monomial(dim, GaussianRational::one(), MultiIndex::unit(dim, j), MultiIndex::zero(dim))
    }

    /// The coordinate `zbar_j` (zero based).
    pub fn zbar(dim: usize, j: usize) -> Self {
        Self::monomial(dim, GaussianRational::one(), MultiIndex::zero(dim), MultiIndex::unit(dim, j))
    }

    /// `|z|^2 = sum_j z_j zbar_j`
    pub fn norm_sq(dim: usize) -> Self {
        let mut p = Self::zero(dim);
        for j in 0..dim {
            let e = MultiIndex::unit(dim, j);
            p.add_term(Monomial::new(e.clone(), e), GaussianRational::one());
        }
        p
    }

    /// `h = 1 - |z|^2`
    pub fn defining(dim: usize) -> Self {
        Self::one(dim).sub(&Self::norm_sq(dim))
    }

    /// `(|z|^2)^k` expanded with multinomial coefficients.
    pub fn norm_sq_pow(dim: usize, k: u32) -> Self {
        let mut p = Self::zero(dim);
        for mu in MultiIndex::of_degree(dim, k) {
            let c = GaussianRational::from_rational(Rational::from_integer(multinomial(&mu)));
            p.add_term(Monomial::new(mu.clone(), mu), c);
        }
        p
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex, beta: &MultiIndex) -> GaussianRational {
        self.terms.get(&Monomial::new(alpha.clone(), beta.clone())).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Value at the origin.
    pub fn at_zero(&self) -> GaussianRational {
        self.terms.get(&Monomial::one(self.dim)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.beta.is_zero())
    }

    pub fn is_antiholomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.alpha.is_zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        debug_assert_eq!(m.alpha.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn check_dim(&self, other: &BiPolynomial) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, o: &BiPolynomial) -> BiPolynomial {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &BiPolynomial) -> BiPolynomial {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> BiPolynomial {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &GaussianRational) -> BiPolynomial {
        if s.is_zero() {
            return Self::zero(self.dim);
        }
        self.map_coeffs(|c| c * s)
    }

    pub fn scale_rational(&self, s: &Rational) -> BiPolynomial {
        self.scale(&GaussianRational::from_rational(s.clone()))
    }

    fn map_coeffs(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> BiPolynomial {
        BiPolynomial { dim: self.dim, terms: self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect() }
    }

    pub fn mul(&self, o: &BiPolynomial) -> BiPolynomial {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut r = Self::zero(self.dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> BiPolynomial {
        let mut acc = Self::one(self.dim);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Complex conjugate as a function: swaps `z` and `zbar` exponents and
    /// conjugates coefficients.
    pub fn conj(&self) -> BiPolynomial {
        BiPolynomial { dim: self.dim, terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect() }
    }

    /// Keep the terms selected by `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> BiPolynomial {
        BiPolynomial {
            dim: self.dim,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous(&self, d: u32) -> BiPolynomial {
        self.filter(|m| m.degree() == d)
    }

    /// Terms of total degree at most `d`.
    pub fn truncate(&self, d: u32) -> BiPolynomial {
        self.filter(|m| m.degree() <= d)
    }

    /// Evaluate with `z` and `w` independent (`w` playing `zbar`).
    pub fn eval_independent(&self, z: &[GaussianRational], w: &[GaussianRational]) -> GaussianRational {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.clone();
                for j in 0..self.dim {
                    v = &v * &z[j].pow(m.alpha.get(j));
                    v = &v * &w[j].pow(m.beta.get(j));
                }
                v
            })
            .sum()
    }

    /// Evaluate on the diagonal `w = conj(z)`.
    pub fn eval(&self, z: &[GaussianRational]) -> GaussianRational {
        let w: Vec<_> = z.iter().map(GaussianRational::conj).collect();
        self.eval_independent(z, &w)
    }

    /// Exact quotient by `1 - |z|^2`, or `DivisionFailure` with the nonzero remainder.
    pub fn div_by_defining(&self) -> Result<BiPolynomial> {
        let Some(deg) = self.degree() else {
            return Ok(self.clone());
        };
        if deg < 2 {
            return Err(Error::DivisionFailure(format!("{self} is not divisible by 1 - |z|^2")));
        }
        // q = p + |z|^2 q, solved degree by degree
        let s = Self::norm_sq(self.dim);
        let mut q = Self::zero(self.dim);
        for d in 0..=(deg - 2) {
            let mut qd = self.homogeneous(d);
            if d >= 2 {
                qd = qd.add(&s.mul(&q.homogeneous(d - 2)));
            }
            q = q.add(&qd);
        }
        let rem = self.sub(&Self::defining(self.dim).mul(&q));
        if !rem.is_zero() {
            return Err(Error::DivisionFailure(format!("remainder {rem} after dividing by 1 - |z|^2")));
        }
        Ok(q)
    }
}

impl fmt::Debug for BiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Term grammar `coeff * z^(a1,...,aN) * zbar^(b1,...,bN)` joined by ` + `.
impl fmt::Display for BiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let items: Vec<_> = self.terms.iter().map(|(m, c)| (c.clone(), monomial_factors(m))).collect();
        f.write_str(&join_terms(&items))
    }
}

/// Join signed terms with ` + ` / ` - `, pulling a leading minus out of the coefficient.
pub(crate) fn join_terms(items: &[(GaussianRational, Vec<String>)]) -> String {
    use num_traits::{Signed, Zero};
    if items.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, factors)) in items.iter().enumerate() {
        let negative = c.re.is_negative() || (c.re.is_zero() && c.im.is_negative());
        let shown = if negative { -c } else { c.clone() };
        match (i, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&format_term(&shown, factors));
    }
    out
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs = monomial_factors(self);
        if fs.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", fs.join(" * "))
        }
    }
}

pub(crate) fn monomial_factors(m: &Monomial) -> Vec<String> {
    let mut out = Vec::new();
    if !m.alpha.is_zero() {
        out.push(format!("z^{}", m.alpha));
    }
    if !m.beta.is_zero() {
        out.push(format!("zbar^{}", m.beta));
    }
    out
}

pub(crate) fn format_term(c: &GaussianRational, factors: &[String]) -> String {
    if factors.is_empty() {
        return c.to_string();
    }
    let body = factors.join(" * ");
    if c.is_one() {
        body
    } else {
        format!("{c} * {body}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn ring_basics() {
        let z = BiPolynomial::z(1, 0);
        let zb = BiPolynomial::zbar(1, 0);
        let p = z.add(&zb).mul(&z.sub(&zb));
        // (z + zb)(z - zb) = z^2 - zb^2
        assert_eq!(p, z.mul(&z).sub(&zb.mul(&zb)));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(BiPolynomial::zero(2).degree(), None);
    }

    #[test]
    fn norm_sq_pow_matches_repeated_product() {
        for n in 1..=3 {
            for k in 0..=3 {
                assert_eq!(BiPolynomial::norm_sq_pow(n, k), BiPolynomial::norm_sq(n).pow(k));
            }
        }
    }

    #[test]
    fn divide_by_defining_function() {
        let h = BiPolynomial::defining(2);
        let q = BiPolynomial::z(2, 0).mul(&BiPolynomial::zbar(2, 1)).add(&BiPolynomial::one(2));
        assert_eq!(h.mul(&q).div_by_defining().unwrap(), q);
        assert_eq!(h.pow(3).div_by_defining().unwrap(), h.pow(2));
        assert!(matches!(BiPolynomial::norm_sq(2).div_by_defining(), Err(Error::DivisionFailure(_))));
        assert!(BiPolynomial::zero(1).div_by_defining().unwrap().is_zero());
    }

    #[test]
    fn evaluation_on_diagonal() {
        let p = BiPolynomial::defining(1);
        let z = vec!["1/2+1/2*i".parse().unwrap()];
        assert_eq!(p.eval(&z), GaussianRational::from_frac(1, 2));
        assert_eq!(BiPolynomial::constant(1, g(3)).eval(&z), g(3));
    }

    #[test]
    fn display_uses_term_grammar() {
        let p = BiPolynomial::defining(2);
        assert_eq!(p.to_string(), "1 - z^(0,1) * zbar^(0,1) - z^(1,0) * zbar^(1,0)");
    }
}
