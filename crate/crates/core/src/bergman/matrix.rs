use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::linalg;
use super::radial::radial_mellin;
use super::symbol::QuasiHomSymbol;
use crate::arith::{monomial_norm_sq, sphere_moment, GaussianRational, MultiIndex, Rational};
use crate::error::{Error, Result};
use crate::report::{Check, Label};
use crate::symbolic::BiPolynomial;

/// Action of an operator on the unnormalized monomials `z^alpha`, `|alpha| <= d_in`.
/// Column `alpha` lists the coefficients of the image of `z^alpha`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorMatrix {
    dim: usize,
    d_in: u32,
    columns: BTreeMap<MultiIndex, BTreeMap<MultiIndex, GaussianRational>>,
}

impl OperatorMatrix {
    pub fn zero(dim: usize, d_in: u32) -> Self {
        OperatorMatrix { dim, d_in, columns: BTreeMap::new() }
    }

    pub fn identity(dim: usize, d_in: u32) -> Self {
        let mut m = Self::zero(dim, d_in);
        for a in MultiIndex::up_to_degree(dim, d_in) {
            m.set(a.clone(), a, GaussianRational::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn d_in(&self) -> u32 {
        self.d_in
    }

    fn set(&mut self, row: MultiIndex, col: MultiIndex, v: GaussianRational) {
        let colmap = self.columns.entry(col.clone()).or_default();
        if v.is_zero() {
            colmap.remove(&row);
        } else {
            colmap.insert(row, v);
        }
        if colmap.is_empty() {
            self.columns.remove(&col);
        }
    }

    fn add_to(&mut self, row: MultiIndex, col: MultiIndex, v: &GaussianRational) {
        let cur = self.entry(&row, &col);
        self.set(row, col, &cur + v);
    }

    /// `entry(row, col)`; zero when not stored.
    pub fn entry(&self, row: &MultiIndex, col: &MultiIndex) -> GaussianRational {
        self.columns.get(col).and_then(|c| c.get(row)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn column(&self, col: &MultiIndex) -> impl Iterator<Item = (&MultiIndex, &GaussianRational)> {
        self.columns.get(col).into_iter().flatten()
    }

    /// Nonzero entries as `(row, col, value)`, columns in graded-lex order.
    pub fn entries(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, &GaussianRational)> {
        self.columns.iter().flat_map(|(c, col)| col.iter().map(move |(r, v)| (r, c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    fn check_compatible(&self, o: &OperatorMatrix) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: o.dim });
        }
        Ok(())
    }

    /// Sum, valid on the smaller of the two column ranges.
    pub fn add(&self, o: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_compatible(o)?;
        let d = self.d_in.min(o.d_in);
        let mut r = self.restrict(d);
        for (row, col, v) in o.entries() {
            if col.degree() <= d {
                r.add_to(row.clone(), col.clone(), v);
            }
        }
        Ok(r)
    }

    pub fn sub(&self, o: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.add(&o.scale(&GaussianRational::from_int(-1)))
    }

    pub fn scale(&self, s: &GaussianRational) -> OperatorMatrix {
        let mut r = Self::zero(self.dim, self.d_in);
        for (row, col, v) in self.entries() {
            r.set(row.clone(), col.clone(), v * s);
        }
        r
    }

    /// Drop columns above degree `d`.
    pub fn restrict(&self, d: u32) -> OperatorMatrix {
        OperatorMatrix {
            dim: self.dim,
            d_in: self.d_in.min(d),
            columns: self
                .columns
                .iter()
                .filter(|(c, _)| c.degree() <= d)
                .map(|(c, m)| (c.clone(), m.clone()))
                .collect(),
        }
    }

    /// `outer * inner`; errors if `inner` sends a built column to a row
    /// beyond the columns of `outer`.
    pub fn compose(outer: &OperatorMatrix, inner: &OperatorMatrix) -> Result<OperatorMatrix> {
        outer.check_compatible(inner)?;
        let mut r = Self::zero(outer.dim, inner.d_in);
        for (col, colmap) in &inner.columns {
            for (mid, v) in colmap {
                if mid.degree() > outer.d_in {
                    return Err(Error::GuardBandViolation(format!(
                        "column {col} reaches row {mid}, outer operator built only to degree {}",
                        outer.d_in
                    )));
                }
                for (row, w) in outer.column(mid) {
                    r.add_to(row.clone(), col.clone(), &(w * v));
                }
            }
        }
        Ok(r)
    }

    /// Exact rank of the stored finite matrix.
    pub fn rank(&self) -> usize {
        let rows: BTreeSet<&MultiIndex> = self.entries().map(|(r, _, _)| r).collect();
        let cols: Vec<&MultiIndex> = self.columns.keys().collect();
        let dense = rows.iter().map(|r| cols.iter().map(|c| self.entry(r, c)).collect()).collect();
        linalg::rank(dense)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = MatrixJson {
            d_in: self.d_in,
            dimension: self.dim,
            entries: self
                .entries()
                .map(|(r, c, v)| EntryJson {
                    col: c.components().to_vec(),
                    row: r.components().to_vec(),
                    value: v.clone(),
                })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: MatrixJson = serde_json::from_value(v.clone())?;
        let mut m = Self::zero(j.dimension, j.d_in);
        for e in j.entries {
            if e.row.len() != j.dimension || e.col.len() != j.dimension {
                return Err(Error::DimensionMismatch { expected: j.dimension, found: e.row.len() });
            }
            m.set(e.row.into(), e.col.into(), e.value);
        }
        Ok(m)
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    col: Vec<u32>,
    row: Vec<u32>,
    value: GaussianRational,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    d_in: u32,
    dimension: usize,
    entries: Vec<EntryJson>,
}

/// `int_{B_N} z^mu zbar^mu rho(|z|^2) dV = N rho^(N + |mu|) sigma_mu`.
pub(crate) fn radial_moment(rho: &super::RadialProfile, mu: &MultiIndex) -> Result<GaussianRational> {
    let n = mu.dim() as i64;
    let m = radial_mellin(rho, n + mu.degree() as i64)?;
    Ok(m.scale(&(sphere_moment(mu) * Rational::from_integer(n.into()))))
}

/// Matrix of `T_u` on columns `|alpha| <= d_in`. Rows are exact, so no
/// output bound is needed.
pub fn toeplitz_matrix(sym: &QuasiHomSymbol, d_in: u32) -> Result<OperatorMatrix> {
    let n = sym.dim();
    let mut m = OperatorMatrix::zero(n, d_in);
    let groups = sym.grouped();
    for alpha in MultiIndex::up_to_degree(n, d_in) {
        for (a, b, rho) in &groups {
            let mu = alpha.add(a);
            let Some(gamma) = mu.checked_sub(b) else { continue };
            let v = radial_moment(rho, &mu)?;
            let v = v.scale(&monomial_norm_sq(&gamma).recip());
            m.add_to(gamma, alpha.clone(), &v);
        }
    }
    Ok(m)
}

/// `x (tensor) y : h -> <h, y> x` on columns `|alpha| <= d_in`.
pub fn rank_one_matrix(x: &BiPolynomial, y: &BiPolynomial, d_in: u32) -> Result<OperatorMatrix> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: y.dim() });
    }
    for (name, p) in [("x", x), ("y", y)] {
        if !p.is_holomorphic() {
            return Err(Error::NotHolomorphic(format!("{name} = {p}")));
        }
    }
    let mut m = OperatorMatrix::zero(x.dim(), d_in);
    for (my, cy) in y.terms() {
        let alpha = &my.alpha;
        if alpha.degree() > d_in {
            continue;
        }
        let w = cy.conj().scale(&monomial_norm_sq(alpha));
        for (mx, cx) in x.terms() {
            m.add_to(mx.alpha.clone(), alpha.clone(), &(cx * &w));
        }
    }
    Ok(m)
}

/// `T_{phi psi} - T_phi T_psi` on columns `|alpha| <= d`.
pub fn hankel_product(phi: &QuasiHomSymbol, psi: &QuasiHomSymbol, d: u32) -> Result<OperatorMatrix> {
    let inner = toeplitz_matrix(psi, d)?;
    let band = d as i64 + psi.max_shift().max(0);
    let outer = toeplitz_matrix(phi, band as u32)?;
    let prod = OperatorMatrix::compose(&outer, &inner)?;
    toeplitz_matrix(&phi.mul(psi)?, d)?.sub(&prod)
}

/// `T_phi T_psi` on columns `|alpha| <= d`, with the guard band built in.
pub fn toeplitz_product(phi: &QuasiHomSymbol, psi: &QuasiHomSymbol, d: u32) -> Result<OperatorMatrix> {
    let inner = toeplitz_matrix(psi, d)?;
    let band = d as i64 + psi.max_shift().max(0);
    OperatorMatrix::compose(&toeplitz_matrix(phi, band as u32)?, &inner)
}

/// Exact comparison on all columns `|alpha| <= d`.
pub fn operator_equal(a: &OperatorMatrix, b: &OperatorMatrix, d: u32) -> Result<Check> {
    let name = format!("operator equality to degree {d}");
    for m in [a, b] {
        if m.d_in < d {
            return Err(Error::GuardBandViolation(format!("matrix built to degree {} compared at degree {d}", m.d_in)));
        }
    }
    let diff = a.restrict(d).sub(&b.restrict(d))?;
    let first = diff.entries().next().map(|(r, c, _)| (r.clone(), c.clone()));
    match first {
        None => Ok(Check::pass(name, Label::VerifiedAtDegree(d))),
        Some((row, col)) => {
            Ok(Check::fail(name, format!("column {col} row {row}: {} vs {}", a.entry(&row, &col), b.entry(&row, &col))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn sym(s: &str, n: usize) -> QuasiHomSymbol {
        QuasiHomSymbol::parse(s, Some(n)).unwrap()
    }

    fn g(r: Rational) -> GaussianRational {
        GaussianRational::from_rational(r)
    }

    #[test]
    fn toeplitz_examples() {
        let tz = toeplitz_matrix(&sym("z", 1), 5).unwrap();
        for k in 0..=5u32 {
            assert_eq!(tz.entry(&[k + 1].into(), &[k].into()), GaussianRational::one());
        }
        let tzb = toeplitz_matrix(&sym("zbar", 1), 5).unwrap();
        assert_eq!(tzb.entry(&[0].into(), &[1].into()), g(rat(1, 2)));
        for k in 1..=5i64 {
            assert_eq!(tzb.entry(&[k as u32 - 1].into(), &[k as u32].into()), g(rat(k, k + 1)));
        }
        assert!(tzb.column(&[0].into()).next().is_none());
        let t = toeplitz_matrix(&sym("z^(1,0)*zbar^(1,0)", 2), 0).unwrap();
        assert_eq!(t.entry(&[0, 0].into(), &[0, 0].into()), g(rat(1, 3)));
    }

    #[test]
    fn rank_one_examples() {
        let one = BiPolynomial::one(1);
        let z = BiPolynomial::z(1, 0);
        let a = rank_one_matrix(&one, &one, 4).unwrap();
        assert_eq!(a.entries().count(), 1);
        assert_eq!(a.entry(&[0].into(), &[0].into()), GaussianRational::one());
        let b = rank_one_matrix(&one, &z, 4).unwrap();
        assert_eq!(b.entry(&[0].into(), &[1].into()), g(rat(1, 2)));
        let c = rank_one_matrix(&z, &one, 4).unwrap();
        assert_eq!(c.entry(&[1].into(), &[0].into()), GaussianRational::one());
        assert!(matches!(rank_one_matrix(&BiPolynomial::zbar(1, 0), &one, 2), Err(Error::NotHolomorphic(_))));
    }

    #[test]
    fn composition_and_guard_band() {
        let tz = toeplitz_matrix(&sym("z", 1), 6).unwrap();
        let tzb = toeplitz_matrix(&sym("zbar", 1), 6).unwrap();
        let p = OperatorMatrix::compose(&tzb, &tz.restrict(5)).unwrap();
        for k in 0..=5i64 {
            assert_eq!(p.entry(&[k as u32].into(), &[k as u32].into()), g(rat(k + 1, k + 2)));
        }
        let q = OperatorMatrix::compose(&tz, &tzb).unwrap();
        for k in 0..=6i64 {
            assert_eq!(q.entry(&[k as u32].into(), &[k as u32].into()), g(rat(k, k + 1)));
        }
        assert!(matches!(OperatorMatrix::compose(&tzb, &tz), Err(Error::GuardBandViolation(_))));
        assert!(tz.sub(&tz).unwrap().is_zero());
    }

    #[test]
    fn hankel_examples() {
        let z = sym("z", 1);
        let zb = sym("zbar", 1);
        assert!(hankel_product(&z, &z, 6).unwrap().is_zero());
        assert!(hankel_product(&zb, &z, 6).unwrap().is_zero());
        let h = hankel_product(&z, &zb, 6).unwrap();
        for k in 0..=6i64 {
            let kk = [k as u32].into();
            assert_eq!(h.entry(&kk, &kk), g(rat(1, (k + 1) * (k + 2))));
        }
        assert_eq!(h.entries().count(), 7);
    }

    #[test]
    fn operator_equal_examples() {
        let z = sym("z", 1);
        let zb = sym("zbar", 1);
        let t = sym("t", 1);
        let lhs = toeplitz_product(&zb, &z, 8).unwrap();
        let rhs = toeplitz_matrix(&t, 8).unwrap();
        assert!(operator_equal(&lhs, &rhs, 8).unwrap().passed());
        let lhs2 = toeplitz_product(&z, &zb, 8).unwrap();
        let c = operator_equal(&lhs2, &rhs, 8).unwrap();
        assert!(c.failed());
        assert_eq!(c.witness.as_deref(), Some("column (0) row (0): 0 vs 1/2"));
        assert!(operator_equal(&rhs, &rhs, 8).unwrap().passed());
        assert!(matches!(operator_equal(&rhs, &rhs, 9), Err(Error::GuardBandViolation(_))));
    }

    #[test]
    fn json_roundtrip() {
        let m = toeplitz_product(&sym("z^(1,0)", 2), &sym("zbar^(0,1)", 2), 3).unwrap();
        assert_eq!(OperatorMatrix::from_json(&m.to_json()).unwrap(), m);
        assert_eq!(m.rank(), toeplitz_matrix(&sym("z^(1,0)*zbar^(0,1)", 2), 3).unwrap().rank());
    }
}
