use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::linalg;
use super::matrix::radial_moment;
use super::symbol::QuasiHomSymbol;
use crate::arith::{binomial, kernel_coefficient, multinomial, GaussianRational, MultiIndex, Rational};
use crate::error::{Error, Result};
use crate::report::{Check, Label};
use crate::symbolic::{BiPolynomial, Monomial};

/// Exact coefficients `c_{alpha,beta}` of `sum c z^alpha zbar^beta` for
/// `|alpha| + |beta| <= degree`. Only nonzero values are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffSeries {
    dim: usize,
    degree: u32,
    coeffs: BTreeMap<(MultiIndex, MultiIndex), GaussianRational>,
}

impl CoeffSeries {
    pub fn zero(dim: usize, degree: u32) -> Self {
        CoeffSeries { dim, degree, coeffs: BTreeMap::new() }
    }

    /// Truncation of a polynomial.
    pub fn from_bipoly(p: &BiPolynomial, degree: u32) -> Self {
        let mut s = Self::zero(p.dim(), degree);
        for (m, c) in p.terms() {
            if m.degree() <= degree {
                s.coeffs.insert((m.alpha.clone(), m.beta.clone()), c.clone());
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `c_{alpha,beta}`, or `None` outside the stored range.
    pub fn coeff(&self, alpha: &MultiIndex, beta: &MultiIndex) -> Option<GaussianRational> {
        if alpha.degree() + beta.degree() > self.degree {
            return None;
        }
        Some(self.coeffs.get(&(alpha.clone(), beta.clone())).cloned().unwrap_or_else(GaussianRational::zero))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, &GaussianRational)> {
        self.coeffs.iter().map(|((a, b), c)| (a, b, c))
    }

    /// The truncated series as a polynomial.
    pub fn to_bipoly(&self) -> BiPolynomial {
        let mut p = BiPolynomial::zero(self.dim);
        for ((a, b), c) in &self.coeffs {
            p.add_term(Monomial::new(a.clone(), b.clone()), c.clone());
        }
        p
    }

    /// Keep only `|alpha| + |beta| <= d`.
    pub fn truncate(&self, d: u32) -> CoeffSeries {
        CoeffSeries {
            dim: self.dim,
            degree: self.degree.min(d),
            coeffs: self
                .coeffs
                .iter()
                .filter(|((a, b), _)| a.degree() + b.degree() <= d)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = SeriesJson {
            coefficients: self
                .coeffs
                .iter()
                .map(|((a, b), c)| SeriesEntry {
                    alpha: a.components().to_vec(),
                    beta: b.components().to_vec(),
                    value: c.clone(),
                })
                .collect(),
            degree: self.degree,
            dimension: self.dim,
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: SeriesJson = serde_json::from_value(v.clone())?;
        let mut s = Self::zero(j.dimension, j.degree);
        for e in j.coefficients {
            if e.alpha.len() != j.dimension || e.beta.len() != j.dimension {
                return Err(Error::DimensionMismatch { expected: j.dimension, found: e.alpha.len() });
            }
            if !e.value.is_zero() {
                s.coeffs.insert((e.alpha.into(), e.beta.into()), e.value);
            }
        }
        Ok(s)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesEntry {
    alpha: Vec<u32>,
    beta: Vec<u32>,
    value: GaussianRational,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    coefficients: Vec<SeriesEntry>,
    degree: u32,
    dimension: usize,
}

/// Exact Taylor coefficients of the Berezin transform up to total degree `degree`.
///
/// The integral against `|K(z, xi)|^2` gives the coefficients of
/// `sum C_k C_l M(k, l) z^k zbar^l`; multiplying by `(1 - |z|^2)^(N+1)` only
/// draws on lower-degree coefficients, so every stored value is exact.
pub fn berezin_series(sym: &QuasiHomSymbol, degree: u32) -> Result<CoeffSeries> {
    let n = sym.dim();
    let groups = sym.grouped();
    let mut moment_cache: HashMap<(usize, MultiIndex), GaussianRational> = HashMap::new();
    let mut inner: HashMap<(MultiIndex, MultiIndex), GaussianRational> = HashMap::new();

    let mut inner_coeff = |k: &MultiIndex, l: &MultiIndex| -> Result<GaussianRational> {
        if let Some(v) = inner.get(&(k.clone(), l.clone())) {
            return Ok(v.clone());
        }
        let mut acc = GaussianRational::zero();
        for (gi, (a, b, rho)) in groups.iter().enumerate() {
            let mu = a.add(l);
            if b.add(k) != mu {
                continue;
            }
            let key = (gi, mu);
            let m = match moment_cache.get(&key) {
                Some(m) => m.clone(),
                None => {
                    let m = radial_moment(rho, &key.1)?;
                    moment_cache.insert(key, m.clone());
                    m
                }
            };
            acc += m;
        }
        let ck = Rational::from_integer(kernel_coefficient(k) * kernel_coefficient(l));
        let v = acc.scale(&ck);
        inner.insert((k.clone(), l.clone()), v.clone());
        Ok(v)
    };

    let mut out = CoeffSeries::zero(n, degree);
    for total in 0..=degree {
        for da in 0..=total {
            for alpha in MultiIndex::of_degree(n, da) {
                for beta in MultiIndex::of_degree(n, total - da) {
                    let mut c = GaussianRational::zero();
                    for mu in alpha.meet(&beta).sub_indices() {
                        let md = mu.degree();
                        if md > n as u32 + 1 {
                            continue;
                        }
                        let k = alpha.checked_sub(&mu).expect("mu <= alpha");
                        let l = beta.checked_sub(&mu).expect("mu <= beta");
                        let v = inner_coeff(&k, &l)?;
                        if v.is_zero() {
                            continue;
                        }
                        let mut w = binomial(n as u32 + 1, md) * multinomial(&mu);
                        if md % 2 == 1 {
                            w = -w;
                        }
                        c += v.scale(&Rational::from_integer(w));
                    }
                    if !c.is_zero() {
                        out.coeffs.insert((alpha.clone(), beta.clone()), c);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// What a truncated coefficient table can prove.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesAnalysis {
    /// Exact rank of the truncated table, a lower bound for the full rank.
    pub rank_lower_bound: usize,
    /// `(alpha, beta)` with both nonzero and `c_{alpha,beta} != 0`.
    pub violations: Vec<(MultiIndex, MultiIndex)>,
    pub degree: u32,
}

impl SeriesAnalysis {
    pub fn pluriharmonic_to_degree(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn series_analyze(cs: &CoeffSeries) -> SeriesAnalysis {
    let rows: BTreeSet<&MultiIndex> = cs.coeffs.keys().map(|(a, _)| a).collect();
    let cols: BTreeSet<&MultiIndex> = cs.coeffs.keys().map(|(_, b)| b).collect();
    let dense = rows
        .iter()
        .map(|a| {
            cols.iter()
                .map(|b| cs.coeffs.get(&((*a).clone(), (*b).clone())).cloned().unwrap_or_else(GaussianRational::zero))
                .collect()
        })
        .collect();
    let violations = cs.coeffs.keys().filter(|(a, b)| !a.is_zero() && !b.is_zero()).cloned().collect();
    SeriesAnalysis { rank_lower_bound: linalg::rank(dense), violations, degree: cs.degree }
}

/// Coefficient-for-coefficient comparison on the common degree range.
pub fn series_equal(a: &CoeffSeries, b: &CoeffSeries) -> Result<Check> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, found: b.dim });
    }
    let d = a.degree.min(b.degree);
    let name = format!("series equality to degree {d}");
    let (ta, tb) = (a.truncate(d), b.truncate(d));
    let keys: BTreeSet<_> = ta.coeffs.keys().chain(tb.coeffs.keys()).collect();
    for k in keys {
        let va = ta.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero);
        let vb = tb.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero);
        if va != vb {
            return Ok(Check::fail(name, format!("c_{{{},{}}}: {} vs {}", k.0, k.1, va, vb)));
        }
    }
    Ok(Check::pass(name, Label::VerifiedAtDegree(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str, n: usize) -> QuasiHomSymbol {
        QuasiHomSymbol::parse(s, Some(n)).unwrap()
    }

    fn poly(s: &str, n: usize) -> BiPolynomial {
        crate::symbolic::parse_bipoly(s, Some(n)).unwrap()
    }

    #[test]
    fn constant_and_holomorphic() {
        let s = berezin_series(&QuasiHomSymbol::constant(2, GaussianRational::one()), 5).unwrap();
        assert_eq!(s, CoeffSeries::from_bipoly(&BiPolynomial::one(2), 5));
        let p = poly("z^(2,1) - 3*zbar^(0,1)", 2);
        let s = berezin_series(&QuasiHomSymbol::from_bipoly(&p), 5).unwrap();
        assert_eq!(s, CoeffSeries::from_bipoly(&p, 5));
    }

    #[test]
    fn bounded_remark_example() {
        let s = berezin_series(&sym("z^(1,0)*zbar^(1,0)*t^-1", 2), 6).unwrap();
        let target = poly("1/2 - 1/2*z^(1,0)*zbar^(1,0) - 1/2*z^(0,1)*zbar^(0,1) + z^(1,0)*zbar^(1,0)", 2);
        assert!(series_equal(&s, &CoeffSeries::from_bipoly(&target, 6)).unwrap().passed());
    }

    #[test]
    fn analysis_examples() {
        let a = series_analyze(&CoeffSeries::from_bipoly(&poly("z^(1,0)*zbar^(1,0)", 2), 4));
        assert_eq!((a.rank_lower_bound, a.violations.len()), (1, 1));
        let b = series_analyze(&CoeffSeries::from_bipoly(&poly("z + zbar", 1), 4));
        assert_eq!(b.rank_lower_bound, 2);
        assert!(b.pluriharmonic_to_degree());
        let c = series_analyze(&berezin_series(&sym("t", 1), 6).unwrap());
        assert!(c.rank_lower_bound >= 4, "{c:?}");
    }

    #[test]
    fn json_roundtrip() {
        let s = berezin_series(&sym("z*log(t)", 1), 5).unwrap();
        assert_eq!(CoeffSeries::from_json(&s.to_json()).unwrap(), s);
    }
}
