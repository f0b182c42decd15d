use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::radial::{radial_factors, RadialProfile};
use crate::arith::{multinomial, GaussianRational, MultiIndex, Rational};
use crate::error::{Error, Result};
use crate::symbolic::{
    is_pluriharmonic, join_terms, monomial_factors, parse_terms, resolve_dim, BiPolynomial, Monomial,
};

/// One term `z^a zbar^b t^k (log t)^[log]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SymbolKey {
    pub a: MultiIndex,
    pub b: MultiIndex,
    pub k: i64,
    pub log: bool,
}

impl SymbolKey {
    /// `|a| + |b| + 2k`, the homogeneity degree.
    pub fn weight(&self) -> i64 {
        self.a.degree() as i64 + self.b.degree() as i64 + 2 * self.k
    }
}

/// Finite sum of quasi-homogeneous terms `c z^a zbar^b rho(|z|^2)`, every
/// term integrable over the ball.
#[derive(Clone, PartialEq, Eq)]
pub struct QuasiHomSymbol {
    dim: usize,
    terms: BTreeMap<SymbolKey, GaussianRational>,
}

impl QuasiHomSymbol {
    pub fn zero(dim: usize) -> Self {
        QuasiHomSymbol { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: GaussianRational) -> Self {
        let mut s = Self::zero(dim);
        s.terms.insert(SymbolKey { a: MultiIndex::zero(dim), b: MultiIndex::zero(dim), k: 0, log: false }, c);
        s.terms.retain(|_, c| !c.is_zero());
        s
    }

    /// `c z^a zbar^b t^k (log t)^log`, checked for integrability.
    pub fn term(dim: usize, c: GaussianRational, a: MultiIndex, b: MultiIndex, k: i64, log: bool) -> Result<Self> {
        let mut s = Self::zero(dim);
        s.add_term(SymbolKey { a, b, k, log }, c)?;
        Ok(s)
    }

    /// `z^a zbar^b rho(t)`
    pub fn from_profile(dim: usize, a: &MultiIndex, b: &MultiIndex, rho: &RadialProfile) -> Result<Self> {
        let mut s = Self::zero(dim);
        for (k, log, c) in rho.terms() {
            s.add_term(SymbolKey { a: a.clone(), b: b.clone(), k, log }, c.clone())?;
        }
        Ok(s)
    }

    pub fn from_bipoly(p: &BiPolynomial) -> Self {
        let mut s = Self::zero(p.dim());
        for (m, c) in p.terms() {
            s.add_term(SymbolKey { a: m.alpha.clone(), b: m.beta.clone(), k: 0, log: false }, c.clone())
                .expect("polynomial terms are integrable");
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymbolKey, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: SymbolKey, c: GaussianRational) -> Result<()> {
        if key.a.dim() != self.dim || key.b.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: key.a.dim() });
        }
        if c.is_zero() {
            return Ok(());
        }
        if key.weight() <= -2 * self.dim as i64 {
            return Err(Error::NonIntegrable(format!(
                "z^{} zbar^{} t^{}: |a|+|b|+2k = {} <= -2N",
                key.a,
                key.b,
                key.k,
                key.weight()
            )));
        }
        let key = self.fold(key);
        let e = self.terms.entry(key.clone()).or_insert_with(GaussianRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    /// In one variable `z zbar = t`, so matching powers fold into the radial part.
    fn fold(&self, key: SymbolKey) -> SymbolKey {
        if self.dim != 1 {
            return key;
        }
        let c = key.a.get(0).min(key.b.get(0));
        SymbolKey {
            a: MultiIndex::new(vec![key.a.get(0) - c]),
            b: MultiIndex::new(vec![key.b.get(0) - c]),
            k: key.k + c as i64,
            log: key.log,
        }
    }

    pub fn add(&self, o: &QuasiHomSymbol) -> Result<QuasiHomSymbol> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: o.dim });
        }
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.clone())?;
        }
        Ok(r)
    }

    pub fn sub(&self, o: &QuasiHomSymbol) -> Result<QuasiHomSymbol> {
        self.add(&o.scale(&GaussianRational::from_int(-1)))
    }

    pub fn scale(&self, s: &GaussianRational) -> QuasiHomSymbol {
        if s.is_zero() {
            return Self::zero(self.dim);
        }
        QuasiHomSymbol { dim: self.dim, terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect() }
    }

    pub fn conj(&self) -> QuasiHomSymbol {
        QuasiHomSymbol {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (SymbolKey { a: k.b.clone(), b: k.a.clone(), k: k.k, log: k.log }, c.conj()))
                .collect(),
        }
    }

    /// Pointwise product; a product of two logarithmic terms is outside the class.
    pub fn mul(&self, o: &QuasiHomSymbol) -> Result<QuasiHomSymbol> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: o.dim });
        }
        let mut r = Self::zero(self.dim);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                if k1.log && k2.log {
                    return Err(Error::UnsupportedProduct("log(t) * log(t)".into()));
                }
                let key = SymbolKey { a: k1.a.add(&k2.a), b: k1.b.add(&k2.b), k: k1.k + k2.k, log: k1.log || k2.log };
                r.add_term(key, c1 * c2)?;
            }
        }
        Ok(r)
    }

    /// Largest `|a| - |b|` over the terms (how far `T_u` can raise degree).
    pub fn max_shift(&self) -> i64 {
        self.terms.keys().map(|k| k.a.degree() as i64 - k.b.degree() as i64).max().unwrap_or(0)
    }

    /// Terms grouped as `z^a zbar^b rho_{a,b}(t)`.
    pub fn grouped(&self) -> Vec<(MultiIndex, MultiIndex, RadialProfile)> {
        let mut map: BTreeMap<(MultiIndex, MultiIndex), RadialProfile> = BTreeMap::new();
        for (k, c) in &self.terms {
            let e = map.entry((k.a.clone(), k.b.clone())).or_default();
            e.add_term(k.k, k.log, c.clone());
        }
        map.into_iter().map(|((a, b), r)| (a, b, r)).collect()
    }

    /// Exact normal form: for each charge `a - b`, the pair of polynomials
    /// `(P, Q)` in `s_j = |z_j|^2` with `t^K u = zpow * (P + Q log t)`,
    /// where `K` clears every negative power of `t`.
    fn normal_form(&self) -> BTreeMap<Vec<i64>, (u32, SPoly, SPoly)> {
        let n = self.dim;
        let mut shift_by_charge: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for k in self.terms.keys() {
            let ch = k.a.signed_diff(&k.b);
            let e = shift_by_charge.entry(ch).or_insert(0);
            *e = (*e).max(-k.k);
        }
        let mut out: BTreeMap<Vec<i64>, (u32, SPoly, SPoly)> = BTreeMap::new();
        for (k, c) in &self.terms {
            let ch = k.a.signed_diff(&k.b);
            let big_k = shift_by_charge[&ch];
            let e = out.entry(ch).or_insert_with(|| (big_k as u32, SPoly::zero(n), SPoly::zero(n)));
            let base = k.a.meet(&k.b);
            let t_pow = (k.k + big_k) as u32;
            let part = SPoly::t_power(n, t_pow).mul_monomial(&base, c);
            if k.log {
                e.2 = e.2.add(&part);
            } else {
                e.1 = e.1.add(&part);
            }
        }
        out
    }

    /// Exact test for the zero function.
    pub fn is_zero_function(&self) -> bool {
        self.normal_form().values().all(|(_, p, q)| p.is_zero() && q.is_zero())
    }

    /// Exact equality as functions on the ball.
    pub fn equals(&self, o: &QuasiHomSymbol) -> Result<bool> {
        Ok(self.sub(o)?.is_zero_function())
    }

    /// The polynomial this symbol equals, if it is one.
    pub fn to_bipoly(&self) -> Option<BiPolynomial> {
        let n = self.dim;
        let mut out = BiPolynomial::zero(n);
        for (ch, (big_k, p, q)) in self.normal_form() {
            if !q.is_zero() {
                return None;
            }
            let poly = p.div_t_power(big_k)?;
            let plus = MultiIndex::new(ch.iter().map(|&d| d.max(0) as u32).collect());
            let minus = MultiIndex::new(ch.iter().map(|&d| (-d).max(0) as u32).collect());
            for (s, c) in poly.terms {
                out.add_term(Monomial::new(plus.add(&s), minus.add(&s)), c);
            }
        }
        Some(out)
    }

    /// Pluriharmonic iff it is a polynomial without mixed terms. The witness
    /// is a mixed monomial, or `None` when the symbol is not a polynomial at all.
    pub fn is_pluriharmonic(&self) -> (bool, Option<Monomial>) {
        match self.to_bipoly() {
            Some(p) => is_pluriharmonic(&p),
            None => (false, None),
        }
    }

    /// Parse the text grammar `coeff * z^a * zbar^b * t^k * log(t)`.
    pub fn parse(s: &str, dim: Option<usize>) -> Result<Self> {
        let terms = parse_terms(s)?;
        let n = resolve_dim(&terms, dim)?;
        let mut sym = Self::zero(n);
        for t in terms {
            let key = SymbolKey {
                a: t.alpha.unwrap_or_else(|| MultiIndex::zero(n)),
                b: t.beta.unwrap_or_else(|| MultiIndex::zero(n)),
                k: t.t_power,
                log: t.log,
            };
            sym.add_term(key, t.coeff)?;
        }
        Ok(sym)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SymbolJson::from(self)).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: SymbolJson = serde_json::from_value(v.clone())?;
        j.into_symbol()
    }
}

impl fmt::Debug for QuasiHomSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuasiHomSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<_> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut fs = monomial_factors(&Monomial::new(k.a.clone(), k.b.clone()));
                fs.extend(radial_factors(k.k, k.log));
                (c.clone(), fs)
            })
            .collect();
        f.write_str(&join_terms(&items))
    }
}

/// JSON term layout shared with scenario files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub coeff: GaussianRational,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub log: bool,
    #[serde(default, skip_serializing_if = "is_zero_i64")]
    pub power: i64,
}

fn is_zero_i64(v: &i64) -> bool {
    *v == 0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolJson {
    pub dimension: usize,
    pub terms: Vec<TermJson>,
}

impl From<&QuasiHomSymbol> for SymbolJson {
    fn from(s: &QuasiHomSymbol) -> Self {
        SymbolJson {
            dimension: s.dim,
            terms: s
                .terms
                .iter()
                .map(|(k, c)| TermJson {
                    alpha: k.a.components().to_vec(),
                    beta: k.b.components().to_vec(),
                    coeff: c.clone(),
                    log: k.log,
                    power: k.k,
                })
                .collect(),
        }
    }
}

impl SymbolJson {
    pub fn into_symbol(self) -> Result<QuasiHomSymbol> {
        terms_to_symbol(self.dimension, &self.terms)
    }
}

pub fn terms_to_symbol(dim: usize, terms: &[TermJson]) -> Result<QuasiHomSymbol> {
    let mut s = QuasiHomSymbol::zero(dim);
    for t in terms {
        let key = SymbolKey {
            a: MultiIndex::new(t.alpha.clone()),
            b: MultiIndex::new(t.beta.clone()),
            k: t.power,
            log: t.log,
        };
        s.add_term(key, t.coeff.clone())?;
    }
    Ok(s)
}

/// Polynomial in `s_1..s_N` (the squared moduli), used by the normal form.
#[derive(Clone, Debug, PartialEq)]
struct SPoly {
    dim: usize,
    terms: BTreeMap<MultiIndex, GaussianRational>,
}

impl SPoly {
    fn zero(dim: usize) -> Self {
        SPoly { dim, terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: MultiIndex, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(GaussianRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn add(&self, o: &SPoly) -> SPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    /// `t^p = (s_1 + ... + s_N)^p`
    fn t_power(dim: usize, p: u32) -> SPoly {
        let mut r = SPoly::zero(dim);
        for mu in MultiIndex::of_degree(dim, p) {
            let c = GaussianRational::from_rational(Rational::from_integer(multinomial(&mu)));
            r.add_term(mu, c);
        }
        r
    }

    fn mul_monomial(&self, m: &MultiIndex, c: &GaussianRational) -> SPoly {
        let mut r = SPoly::zero(self.dim);
        for (k, v) in &self.terms {
            r.add_term(k.add(m), v * c);
        }
        r
    }

    /// Exact quotient by `t^p`, or `None`.
    fn div_t_power(&self, p: u32) -> Option<SPoly> {
        let mut cur = self.clone();
        for _ in 0..p {
            cur = cur.div_t()?;
        }
        Some(cur)
    }

    /// Division by `t = s_1 + ... + s_N` with `s_1` leading.
    fn div_t(&self) -> Option<SPoly> {
        let mut rem = self.clone();
        let mut quot = SPoly::zero(self.dim);
        loop {
            let lead = rem.terms.iter().find(|(m, _)| m.get(0) > 0).map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = lead else { break };
            let q = m.dec(0).expect("positive first exponent");
            for j in 0..self.dim {
                rem.add_term(q.inc(j), -&c);
            }
            quot.add_term(q, c);
        }
        rem.is_zero().then_some(quot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str, n: usize) -> QuasiHomSymbol {
        QuasiHomSymbol::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn integrability_is_enforced() {
        assert!(matches!(
            QuasiHomSymbol::term(1, GaussianRational::one(), [0].into(), [0].into(), -1, false),
            Err(Error::NonIntegrable(_))
        ));
        assert!(QuasiHomSymbol::term(2, GaussianRational::one(), [0, 0].into(), [0, 0].into(), -1, false).is_ok());
        assert!(QuasiHomSymbol::parse("z^(1)*zbar^(1)*t^-1", Some(1)).is_ok());
    }

    #[test]
    fn one_variable_folding() {
        let s = sym("z^(1)*zbar^(1)*t^-1", 1);
        assert_eq!(s, QuasiHomSymbol::constant(1, GaussianRational::one()));
        assert_eq!(s.to_string(), "1");
    }

    #[test]
    fn normal_form_detects_identities() {
        // |z1|^2 + |z2|^2 - t = 0
        let s = sym("z^(1,0)*zbar^(1,0) + z^(0,1)*zbar^(0,1) - t", 2);
        assert!(s.is_zero_function());
        // (|z1|^2 + |z2|^2) t^-1 = 1
        let u = sym("z^(1,0)*zbar^(1,0)*t^-1 + z^(0,1)*zbar^(0,1)*t^-1", 2);
        assert_eq!(u.to_bipoly().unwrap(), BiPolynomial::one(2));
        assert!(u.is_pluriharmonic().0);
        let v = sym("z^(1,0)*zbar^(1,0)*t^-1", 2);
        assert!(v.to_bipoly().is_none());
        assert!(!v.is_pluriharmonic().0);
        assert!(!sym("log(t)", 2).is_zero_function());
    }

    #[test]
    fn products_and_conjugates() {
        let a = sym("z^(1)", 1);
        let b = sym("zbar^(1)", 1);
        assert_eq!(a.mul(&b).unwrap(), sym("t", 1));
        assert_eq!(a.conj(), b);
        let l = sym("log(t)", 1);
        assert!(matches!(l.mul(&l), Err(Error::UnsupportedProduct(_))));
    }

    #[test]
    fn json_roundtrip_and_display() {
        let s = sym("2*z^(1,0)*zbar^(0,1)*t^-1*log(t) - (1/2+i)", 2);
        assert_eq!(QuasiHomSymbol::from_json(&s.to_json()).unwrap(), s);
        assert_eq!(QuasiHomSymbol::parse(&s.to_string(), Some(2)).unwrap(), s);
        let js = serde_json::to_string(&s.to_json()).unwrap();
        assert!(
            js.starts_with("{\"dimension\":2,\"terms\":[{\"alpha\":[0,0],\"beta\":[0,0],\"coeff\":\"-1/2-1/1*i\"}"),
            "{js}"
        );
    }
}
