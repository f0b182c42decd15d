use std::collections::HashMap;
use std::sync::Arc;

use super::expr::{Expr, Var};
use super::points::SamplePoint;
use crate::arith::{factorial, GaussianRational, Rational};
use crate::error::{Error, Result};

/// Monomial bookkeeping for truncated Taylor series in a fixed set of
/// active variables up to a fixed total order.
#[derive(Debug)]
pub struct JetSpace {
    /// Global ids of the active variables.
    pub active: Vec<usize>,
    pub order: u32,
    monos: Vec<Vec<u32>>,
    degree: Vec<u32>,
    index: HashMap<Vec<u32>, usize>,
    /// For each monomial `k`, every `(i, j)` with `mono_i + mono_j = mono_k`.
    pairs: Vec<Vec<(usize, usize)>>,
    /// `up[v][k]` is the index of `mono_k + e_v`, if within the order.
    up: Vec<Vec<Option<usize>>>,
    /// `down[v][k]` is the index of `mono_k - e_v`, if nonnegative.
    down: Vec<Vec<Option<usize>>>,
}

impl JetSpace {
    pub fn new(active: Vec<usize>, order: u32) -> Arc<JetSpace> {
        let nv = active.len();
        let mut monos: Vec<Vec<u32>> = vec![vec![0; nv]];
        let mut frontier = monos.clone();
        for _ in 0..order {
            let mut next = Vec::new();
            for m in &frontier {
                // extend only at or after the last nonzero slot so each monomial appears once
                let start = m.iter().rposition(|&e| e > 0).unwrap_or(0);
                for v in start..nv {
                    let mut k = m.clone();
                    k[v] += 1;
                    next.push(k);
                }
            }
            monos.extend(next.iter().cloned());
            frontier = next;
        }
        let degree: Vec<u32> = monos.iter().map(|m| m.iter().sum()).collect();
        let index: HashMap<Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut pairs = vec![Vec::new(); monos.len()];
        for (i, a) in monos.iter().enumerate() {
            for (j, b) in monos.iter().enumerate() {
                if degree[i] + degree[j] > order {
                    continue;
                }
                let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                pairs[index[&s]].push((i, j));
            }
        }
        let shift = |delta: i64| -> Vec<Vec<Option<usize>>> {
            (0..nv)
                .map(|v| {
                    monos
                        .iter()
                        .map(|m| {
                            let mut k = m.clone();
                            let e = k[v] as i64 + delta;
                            if e < 0 {
                                return None;
                            }
                            k[v] = e as u32;
                            index.get(&k).copied()
                        })
                        .collect()
                })
                .collect()
        };
        let up = shift(1);
        let down = shift(-1);
        Arc::new(JetSpace { active, order, monos, degree, index, pairs, up, down })
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn local(&self, global: usize) -> Option<usize> {
        self.active.iter().position(|&g| g == global)
    }
}

/// Truncated Taylor expansion `f(p + d) = sum_k c_k d^k`, exact in `Q(i)`.
/// Coefficients of total degree above `valid` carry no information.
#[derive(Clone, Debug)]
pub struct Jet {
    space: Arc<JetSpace>,
    coeffs: Vec<GaussianRational>,
    valid: u32,
}

impl Jet {
    pub fn constant(space: &Arc<JetSpace>, c: GaussianRational) -> Jet {
        let mut coeffs = vec![GaussianRational::zero(); space.len()];
        coeffs[0] = c;
        Jet { space: space.clone(), coeffs, valid: space.order }
    }

    /// The active variable with local index `v`, expanded at `base`.
    pub fn coordinate(space: &Arc<JetSpace>, v: usize, base: GaussianRational) -> Jet {
        let mut j = Self::constant(space, base);
        if space.order > 0 {
            let mut e = vec![0; space.active.len()];
            e[v] = 1;
            j.coeffs[space.index[&e]] = GaussianRational::one();
        }
        j
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn valid_order(&self) -> u32 {
        self.valid
    }

    pub fn value(&self) -> GaussianRational {
        self.coeffs[0].clone()
    }

    /// Taylor coefficient at the exponent vector over the active variables.
    pub fn coeff(&self, exps: &[u32]) -> Option<GaussianRational> {
        let k = *self.space.index.get(exps)?;
        (self.space.degree[k] <= self.valid).then(|| self.coeffs[k].clone())
    }

    /// The mixed partial derivative `d^exps f` at the base point.
    pub fn derivative(&self, exps: &[u32]) -> Option<GaussianRational> {
        let f: num_bigint::BigInt = exps.iter().map(|&e| factorial(e)).product();
        self.coeff(exps).map(|c| c.scale(&Rational::from_integer(f)))
    }

    fn with(&self, coeffs: Vec<GaussianRational>, valid: u32) -> Jet {
        let mut coeffs = coeffs;
        for (k, c) in coeffs.iter_mut().enumerate() {
            if self.space.degree[k] > valid {
                *c = GaussianRational::zero();
            }
        }
        Jet { space: self.space.clone(), coeffs, valid }
    }

    pub fn add(&self, o: &Jet) -> Jet {
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        self.with(c, self.valid.min(o.valid))
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        let c = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        self.with(c, self.valid.min(o.valid))
    }

    pub fn neg(&self) -> Jet {
        self.with(self.coeffs.iter().map(|a| -a).collect(), self.valid)
    }

    pub fn scale(&self, s: &GaussianRational) -> Jet {
        self.with(self.coeffs.iter().map(|a| a * s).collect(), self.valid)
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let valid = self.valid.min(o.valid);
        let sp = &self.space;
        let mut out = vec![GaussianRational::zero(); sp.len()];
        for (k, slot) in out.iter_mut().enumerate() {
            if sp.degree[k] > valid {
                break;
            }
            let mut acc = GaussianRational::zero();
            for &(i, j) in &sp.pairs[k] {
                if self.coeffs[i].is_zero() || o.coeffs[j].is_zero() {
                    continue;
                }
                acc += &self.coeffs[i] * &o.coeffs[j];
            }
            *slot = acc;
        }
        self.with(out, valid)
    }

    /// `1/f`, or `None` when `f` vanishes at the base point.
    pub fn recip(&self) -> Option<Jet> {
        let inv0 = self.coeffs[0].inv()?;
        let sp = &self.space;
        let mut g = vec![GaussianRational::zero(); sp.len()];
        g[0] = inv0.clone();
        for k in 1..sp.len() {
            if sp.degree[k] > self.valid {
                break;
            }
            let mut acc = GaussianRational::zero();
            for &(i, j) in &sp.pairs[k] {
                if i == 0 || self.coeffs[i].is_zero() || g[j].is_zero() {
                    continue;
                }
                acc += &self.coeffs[i] * &g[j];
            }
            g[k] = -(&acc * &inv0);
        }
        Some(self.with(g, self.valid))
    }

    /// Integer power; `None` if a negative power meets a zero value.
    pub fn powi(&self, e: i64) -> Option<Jet> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Jet::constant(&self.space, GaussianRational::one());
        acc.valid = self.valid;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Some(acc)
    }

    /// `d f / d x_v` for local variable `v`; lowers the valid order by one.
    pub fn partial(&self, v: usize) -> Jet {
        assert!(self.valid > 0, "jet order exhausted");
        let sp = &self.space;
        let mut out = vec![GaussianRational::zero(); sp.len()];
        for (k, slot) in out.iter_mut().enumerate() {
            if sp.degree[k] + 1 > self.valid {
                continue;
            }
            if let Some(u) = sp.up[v][k] {
                let m = sp.monos[k][v] as i64 + 1;
                *slot = &self.coeffs[u] * &GaussianRational::from_int(m);
            }
        }
        self.with(out, self.valid - 1)
    }

    /// Multiply by the coordinate `x_v = base + d_v`.
    pub fn mul_coord(&self, v: usize, base: &GaussianRational) -> Jet {
        let sp = &self.space;
        let mut out: Vec<GaussianRational> = self.coeffs.iter().map(|c| c * base).collect();
        for (k, slot) in out.iter_mut().enumerate() {
            if let Some(d) = sp.down[v][k] {
                *slot += &self.coeffs[d];
            }
        }
        self.with(out, self.valid)
    }
}

/// Evaluate `expr` as a jet in the given active variables; the others are
/// frozen at their values in `pt`.
pub fn eval_jet_in(expr: &Expr, pt: &SamplePoint, space: &Arc<JetSpace>) -> Result<Jet> {
    let n = pt.dim();
    Ok(match expr {
        Expr::Const(c) => Jet::constant(space, c.clone()),
        Expr::Var(v) => {
            let id = v.id(n);
            let val = pt.value(*v);
            match space.local(id) {
                Some(l) => Jet::coordinate(space, l, val),
                None => Jet::constant(space, val),
            }
        }
        Expr::Add(xs) => {
            let mut acc = Jet::constant(space, GaussianRational::zero());
            for x in xs {
                acc = acc.add(&eval_jet_in(x, pt, space)?);
            }
            acc
        }
        Expr::Mul(xs) => {
            let mut acc = Jet::constant(space, GaussianRational::one());
            for x in xs {
                acc = acc.mul(&eval_jet_in(x, pt, space)?);
            }
            acc
        }
        Expr::Neg(x) => eval_jet_in(x, pt, space)?.neg(),
        Expr::Recip(x) => eval_jet_in(x, pt, space)?.recip().ok_or_else(|| Error::PoleAtPoint(pt.to_string()))?,
        Expr::Pow(x, e) => eval_jet_in(x, pt, space)?.powi(*e).ok_or_else(|| Error::PoleAtPoint(pt.to_string()))?,
    })
}

/// Jet of `expr` in all `4N` variables.
pub fn eval_jet(expr: &Expr, pt: &SamplePoint, order: u32) -> Result<Jet> {
    let space = JetSpace::new((0..4 * pt.dim()).collect(), order);
    eval_jet_in(expr, pt, &space)
}

/// Plain value of `expr` at `pt`.
pub fn eval_value(expr: &Expr, pt: &SamplePoint) -> Result<GaussianRational> {
    let space = JetSpace::new(Vec::new(), 0);
    Ok(eval_jet_in(expr, pt, &space)?.value())
}

/// Which pair of variable blocks a differential operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Z,
    Xi,
}

impl Side {
    pub fn hol(self, j: usize) -> Var {
        match self {
            Side::Z => Var::Z(j),
            Side::Xi => Var::Xi(j),
        }
    }

    pub fn anti(self, j: usize) -> Var {
        match self {
            Side::Z => Var::W(j),
            Side::Xi => Var::Eta(j),
        }
    }

    /// Jet space over this side's `2N` variables: holomorphic block first.
    pub fn space(self, n: usize, order: u32) -> Arc<JetSpace> {
        let ids = (0..n).map(|j| self.hol(j).id(n)).chain((0..n).map(|j| self.anti(j).id(n)));
        JetSpace::new(ids.collect(), order)
    }
}

/// Differential operators acting on jets built by [`Side::space`].
pub struct SideOps<'a> {
    pub n: usize,
    pub side: Side,
    pub pt: &'a SamplePoint,
}

impl SideOps<'_> {
    fn base(&self, local: usize) -> GaussianRational {
        let n = self.n;
        if local < n {
            self.pt.value(self.side.hol(local))
        } else {
            self.pt.value(self.side.anti(local - n))
        }
    }

    fn euler(&self, f: &Jet, offset: usize) -> Jet {
        let mut acc = Jet::constant(f.space(), GaussianRational::zero());
        for j in 0..self.n {
            let v = offset + j;
            acc = acc.add(&f.partial(v).mul_coord(v, &self.base(v)));
        }
        acc
    }

    pub fn e(&self, f: &Jet) -> Jet {
        self.euler(f, 0)
    }

    pub fn ebar(&self, f: &Jet) -> Jet {
        self.euler(f, self.n)
    }

    pub fn laplacian(&self, f: &Jet) -> Jet {
        let mut acc = Jet::constant(f.space(), GaussianRational::zero());
        for j in 0..self.n {
            acc = acc.add(&f.partial(j).partial(self.n + j));
        }
        acc
    }

    /// `E Ebar f`
    pub fn e_ebar(&self, f: &Jet) -> Jet {
        self.e(&self.ebar(f))
    }

    /// `(E+s)(Ebar+s) f - Delta f`
    pub fn shifted_pair(&self, s: i64, f: &Jet) -> Jet {
        let sg = GaussianRational::from_int(s);
        let inner = self.ebar(f).add(&f.scale(&sg));
        let outer = self.e(&inner).add(&inner.scale(&sg));
        outer.sub(&self.laplacian(f))
    }

    /// Multiply by `1 - sum_j x_j xbar_j`.
    pub fn mul_defining(&self, f: &Jet) -> Jet {
        let mut acc = f.clone();
        for j in 0..self.n {
            let t = f.mul_coord(self.n + j, &self.base(self.n + j)).mul_coord(j, &self.base(j));
            acc = acc.sub(&t);
        }
        acc
    }

    /// `(1 - |x|^2)(Delta - E Ebar) f`
    pub fn inv_laplacian(&self, f: &Jet) -> Jet {
        self.mul_defining(&self.laplacian(f).sub(&self.e_ebar(f)))
    }

    /// `(|E+m|^2 - Delta) ... (|E|^2 - Delta) f`, the `s = 0` factor acting first.
    pub fn chain(&self, m: u32, f: &Jet) -> Jet {
        (0..=m as i64).fold(f.clone(), |acc, s| self.shifted_pair(s, &acc))
    }

    /// `q(inv_laplacian) f` for a polynomial `q` with rational coefficients.
    pub fn poly_inv_laplacian(&self, q: &[Rational], f: &Jet) -> Jet {
        let mut out = Jet::constant(f.space(), GaussianRational::zero());
        let mut power = f.clone();
        for (k, c) in q.iter().enumerate() {
            if k > 0 {
                power = self.inv_laplacian(&power);
            }
            out = out.add(&power.scale(&GaussianRational::from_rational(c.clone())));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn space_sizes() {
        // C(v + d, d) monomials
        assert_eq!(JetSpace::new(vec![0, 1], 3).len(), 10);
        assert_eq!(JetSpace::new(vec![0, 1, 2, 3], 6).len(), 210);
        assert_eq!(JetSpace::new(vec![], 4).len(), 1);
    }

    #[test]
    fn product_value_and_gradient() {
        let pt = SamplePoint::general(vec![g("1/2")], vec![g("1/2")], vec![g("0")], vec![g("0")]);
        let e = Expr::var(Var::Z(0)) * Expr::var(Var::W(0));
        let j = eval_jet(&e, &pt, 1).unwrap();
        assert_eq!(j.value(), g("1/4"));
        assert_eq!(j.coeff(&[1, 0, 0, 0]).unwrap(), g("1/2"));
    }

    #[test]
    fn geometric_series() {
        let pt = SamplePoint::general(vec![g("0")], vec![g("0")], vec![g("0")], vec![g("0")]);
        let e = (Expr::int(1) - Expr::var(Var::Z(0)) * Expr::var(Var::W(0))).recip();
        let j = eval_jet(&e, &pt, 2).unwrap();
        assert_eq!(j.value(), g("1"));
        assert_eq!(j.coeff(&[1, 1, 0, 0]).unwrap(), g("1"));
        assert_eq!(j.coeff(&[2, 0, 0, 0]).unwrap(), g("0"));
        assert_eq!(j.coeff(&[1, 0, 0, 0]).unwrap(), g("0"));
    }

    #[test]
    fn pole_is_reported() {
        let pt = SamplePoint::general(vec![g("1")], vec![g("0")], vec![g("0")], vec![g("0")]);
        let e = (Expr::int(1) - Expr::var(Var::Z(0))).recip();
        assert!(matches!(eval_jet(&e, &pt, 2), Err(Error::PoleAtPoint(_))));
    }

    #[test]
    fn recip_times_self_is_one() {
        let pt = SamplePoint::general(vec![g("1/3+1/4*i")], vec![g("-1/5")], vec![g("1/7")], vec![g("1/2*i")]);
        let e = Expr::int(2) + Expr::var(Var::Z(0)) * Expr::var(Var::Eta(0)) - Expr::var(Var::W(0));
        let j = eval_jet(&e, &pt, 4).unwrap();
        let one = j.mul(&j.recip().unwrap());
        assert_eq!(one.value(), g("1"));
        for k in 1..one.space().len() {
            assert!(one.coeffs[k].is_zero());
        }
        let p = j.powi(-3).unwrap().mul(&j.powi(3).unwrap());
        assert_eq!(p.value(), g("1"));
    }

    #[test]
    fn partial_and_coordinate() {
        let pt = SamplePoint::general(vec![g("1/2")], vec![g("1/3")], vec![g("0")], vec![g("0")]);
        let sp = Side::Z.space(1, 3);
        let z = eval_jet_in(&Expr::var(Var::Z(0)).pow(3), &pt, &sp).unwrap();
        // d/dz z^3 = 3 z^2
        assert_eq!(z.partial(0).value(), g("3/4"));
        assert_eq!(z.partial(0).partial(0).value(), g("3"));
        let ops = SideOps { n: 1, side: Side::Z, pt: &pt };
        assert_eq!(ops.e(&z).value(), g("3/8"));
    }
}
