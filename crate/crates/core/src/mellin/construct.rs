use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::rational::{invert_mellin, partial_fractions, RationalFunctionQ};
use crate::arith::{factorial, GaussianRational, MultiIndex, Rational};
use crate::bergman::QuasiHomSymbol;
use crate::error::{Error, Result};
use crate::symbolic::BiPolynomial;

/// `zbar^anti z^hol (1 - |z|^2)^ell`, the building block of the construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedMonomial {
    pub anti: MultiIndex,
    pub hol: MultiIndex,
    pub ell: u32,
}

impl WeightedMonomial {
    pub fn new(anti: MultiIndex, hol: MultiIndex, ell: u32) -> Self {
        WeightedMonomial { anti, hol, ell }
    }

    /// `|alpha| + |beta| + 2 ell`
    pub fn weight(&self) -> u32 {
        self.anti.degree() + self.hol.degree() + 2 * self.ell
    }

    pub fn to_bipoly(&self) -> BiPolynomial {
        let n = self.anti.dim();
        BiPolynomial::monomial(n, GaussianRational::one(), self.hol.clone(), self.anti.clone())
            .mul(&BiPolynomial::defining(n).pow(self.ell))
    }
}

fn check_indices(alpha: &MultiIndex, beta: &MultiIndex, n: usize) -> Result<()> {
    for m in [alpha, beta] {
        if m.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.dim() });
        }
    }
    Ok(())
}

fn check_admissible(alpha: &MultiIndex, beta: &MultiIndex, ell: u32, n: usize) -> Result<()> {
    check_indices(alpha, beta, n)?;
    if beta.degree() > alpha.degree() {
        return Err(Error::PreconditionViolation(format!(
            "|beta| = {} exceeds |alpha| = {}",
            beta.degree(),
            alpha.degree()
        )));
    }
    let w = alpha.degree() + beta.degree() + 2 * ell;
    if w > 2 * n as u32 + 1 {
        return Err(Error::PreconditionViolation(format!("|alpha|+|beta|+2l = {w} exceeds 2N+1")));
    }
    Ok(())
}

/// Roots of `Gamma(zeta + a) / Gamma(zeta + b)` for integer `a - b`, split as
/// (numerator roots, denominator roots).
fn gamma_ratio_roots(a: i64, b: i64) -> (Vec<i64>, Vec<i64>) {
    if a >= b {
        ((b..a).map(|j| -j).collect(), Vec::new())
    } else {
        (Vec::new(), (a..b).map(|j| -j).collect())
    }
}

/// Mellin transform of the radial profile, with all Gamma quotients expanded:
/// `N!/(N-l)! * Gamma(zeta) Gamma(zeta+1-|a|-|b|-l) / (Gamma(zeta+1-|a|) Gamma(zeta+1-|b|))`.
pub fn phi_hat(alpha: &MultiIndex, beta: &MultiIndex, ell: u32, n: usize) -> Result<RationalFunctionQ> {
    check_admissible(alpha, beta, ell, n)?;
    let (la, lb, l) = (alpha.degree() as i64, beta.degree() as i64, ell as i64);
    let c = Rational::new(factorial(n as u32), factorial(n as u32 - ell));
    let (mut num, mut den) = gamma_ratio_roots(0, 1 - la);
    let (n2, d2) = gamma_ratio_roots(1 - la - lb - l, 1 - lb);
    num.extend(n2);
    den.extend(d2);
    RationalFunctionQ::from_roots(c, &num, &den)
}

/// `u = zbar^alpha z^beta phi(|z|^2)` with `phi` the inverse Mellin transform of `phi_hat`.
pub fn base_symbol(alpha: &MultiIndex, beta: &MultiIndex, ell: u32, n: usize) -> Result<QuasiHomSymbol> {
    let rf = phi_hat(alpha, beta, ell, n)?;
    let rho = invert_mellin(&partial_fractions(&rf)?)?;
    QuasiHomSymbol::from_profile(n, beta, alpha, &rho)
}

/// The Berezin transform of `base_symbol`, as a sum of weighted monomials.
/// The first entry is always `zbar^alpha z^beta (1-|z|^2)^l` with coefficient 1;
/// the rest have strictly smaller holomorphic degree.
pub fn derivative_formula_terms(
    alpha: &MultiIndex,
    beta: &MultiIndex,
    ell: u32,
    n: usize,
) -> Result<Vec<(WeightedMonomial, Rational)>> {
    check_admissible(alpha, beta, ell, n)?;
    let m = n as u32 + 1 - beta.degree() - ell;
    // key (hol, anti, e) means z^hol zbar^anti (1-|z|^2)^(-e)
    let mut cur: BTreeMap<(MultiIndex, MultiIndex, u32), Rational> = BTreeMap::new();
    cur.insert((MultiIndex::zero(n), alpha.clone(), m), Rational::one());
    for j in 0..n {
        for _ in 0..beta.get(j) {
            let mut next: BTreeMap<(MultiIndex, MultiIndex, u32), Rational> = BTreeMap::new();
            for ((c, d, e), v) in cur {
                if let Some(d2) = d.dec(j) {
                    let w = &v * Rational::from_integer(d.get(j).into());
                    *next.entry((c.clone(), d2, e)).or_insert_with(Rational::zero) += w;
                }
                let w = &v * Rational::from_integer(e.into());
                *next.entry((c.inc(j), d, e + 1)).or_insert_with(Rational::zero) += w;
            }
            next.retain(|_, v| !v.is_zero());
            cur = next;
        }
    }
    // Gamma(M) / Gamma(M + |beta|)
    let norm = Rational::new(factorial(m - 1), factorial(m + beta.degree() - 1));
    let mut lead = None;
    let mut rest = Vec::new();
    for ((c, d, e), v) in cur {
        let term = WeightedMonomial::new(d, c, n as u32 + 1 - e);
        let v = v * &norm;
        if term.hol == *beta && term.anti == *alpha {
            lead = Some((term, v));
        } else {
            rest.push((term, v));
        }
    }
    let lead = lead.expect("leading term survives differentiation");
    debug_assert!(lead.1.is_one() && lead.0.ell == ell);
    let mut out = vec![lead];
    out.extend(rest);
    Ok(out)
}

/// `Gamma(M)/Gamma(M+|beta|) (1-|z|^2)^(N+1) dbar^beta { zbar^alpha (1-|z|^2)^(-M) }`
/// with `M = N + 1 - |beta| - l`, expanded.
pub fn derivative_formula_polynomial(
    alpha: &MultiIndex,
    beta: &MultiIndex,
    ell: u32,
    n: usize,
) -> Result<BiPolynomial> {
    let mut p = BiPolynomial::zero(n);
    for (t, c) in derivative_formula_terms(alpha, beta, ell, n)? {
        p = p.add(&t.to_bipoly().scale_rational(&c));
    }
    Ok(p)
}

/// Memo table for [`preimage_monomial`], keyed by the normalized target.
#[derive(Default)]
pub struct PreimageCache {
    table: HashMap<WeightedMonomial, QuasiHomSymbol>,
}

impl PreimageCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn preimage(&mut self, alpha: &MultiIndex, beta: &MultiIndex, ell: u32, n: usize) -> Result<QuasiHomSymbol> {
        check_indices(alpha, beta, n)?;
        let degree = alpha.degree() + beta.degree() + 2 * ell;
        let bound = 2 * n as u32 + 1;
        if degree > bound {
            return Err(Error::DegreeTooLarge { degree, bound });
        }
        if beta.degree() > alpha.degree() {
            return Ok(self.preimage(beta, alpha, ell, n)?.conj());
        }
        let key = WeightedMonomial::new(alpha.clone(), beta.clone(), ell);
        if let Some(u) = self.table.get(&key) {
            return Ok(u.clone());
        }
        let mut u = base_symbol(alpha, beta, ell, n)?;
        for (t, c) in derivative_formula_terms(alpha, beta, ell, n)?.into_iter().skip(1) {
            let sub = self.preimage(&t.anti, &t.hol, t.ell, n)?;
            u = u.sub(&sub.scale(&GaussianRational::from_rational(c)))?;
        }
        self.table.insert(key, u.clone());
        Ok(u)
    }
}

/// A symbol whose Berezin transform is `zbar^alpha z^beta (1-|z|^2)^l`.
pub fn preimage_monomial(alpha: &MultiIndex, beta: &MultiIndex, ell: u32, n: usize) -> Result<QuasiHomSymbol> {
    PreimageCache::new().preimage(alpha, beta, ell, n)
}

/// Outcome of the polynomial range test.
#[derive(Clone, Debug, PartialEq)]
pub enum RangeDecision {
    /// `B(symbol) = f`; `pluriharmonic` is the part of `f` carried over unchanged.
    InRange { pluriharmonic: BiPolynomial, symbol: QuasiHomSymbol },
    /// `d/dz_j dbar/dzbar_l f` has total degree `degree > 2N - 1` (indices 1-based).
    Violation { j: usize, l: usize, degree: u32 },
}

impl RangeDecision {
    pub fn symbol(&self) -> Option<&QuasiHomSymbol> {
        match self {
            RangeDecision::InRange { symbol, .. } => Some(symbol),
            RangeDecision::Violation { .. } => None,
        }
    }
}

/// Decide whether the polynomial `f` is a Berezin transform and, if so, build a preimage.
pub fn range_decision(f: &BiPolynomial, n: usize) -> Result<RangeDecision> {
    if f.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: f.dim() });
    }
    let limit = 2 * n as i64 - 1;
    for j in 0..n {
        for l in 0..n {
            let mut top: Option<u32> = None;
            for (m, _) in f.terms() {
                if m.alpha.get(j) > 0 && m.beta.get(l) > 0 {
                    let d = m.degree() - 2;
                    top = Some(top.map_or(d, |t| t.max(d)));
                }
            }
            if let Some(d) = top {
                if d as i64 > limit {
                    return Ok(RangeDecision::Violation { j: j + 1, l: l + 1, degree: d });
                }
            }
        }
    }
    let pluriharmonic = f.filter(|m| !m.is_mixed());
    let mut symbol = QuasiHomSymbol::from_bipoly(&pluriharmonic);
    let mut cache = PreimageCache::new();
    for (m, c) in f.terms() {
        if m.is_mixed() {
            let u = cache.preimage(&m.beta, &m.alpha, 0, n)?;
            symbol = symbol.add(&u.scale(c))?;
        }
    }
    Ok(RangeDecision::InRange { pluriharmonic, symbol })
}

/// `u` with `T_{z^beta} T_{zbar^alpha} = T_u`, when one exists.
pub fn product_symbol(beta: &MultiIndex, alpha: &MultiIndex, n: usize) -> Result<QuasiHomSymbol> {
    check_indices(alpha, beta, n)?;
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::PreconditionViolation("both multi-indices must be nonzero".into()));
    }
    let degree = alpha.degree() + beta.degree();
    let bound = 2 * n as u32 + 1;
    if degree > bound {
        return Err(Error::NotRepresentable { degree, bound });
    }
    preimage_monomial(alpha, beta, 0, n)
}
