use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::GaussianRational;
use crate::symbolic::BiPolynomial;

/// One of the `4N` formal variables. `W` and `Eta` stand for the conjugates
/// of `Z` and `Xi`, but are independent until a diagonal point is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Z(usize),
    W(usize),
    Xi(usize),
    Eta(usize),
}

impl Var {
    /// Position in the flat layout `z, w, xi, eta`.
    pub fn id(self, n: usize) -> usize {
        match self {
            Var::Z(j) => j,
            Var::W(j) => n + j,
            Var::Xi(j) => 2 * n + j,
            Var::Eta(j) => 3 * n + j,
        }
    }
}

/// Rational expression tree over the formal variables.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(GaussianRational),
    Var(Var),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Recip(Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn c(v: GaussianRational) -> Expr {
        Expr::Const(v)
    }

    pub fn int(v: i64) -> Expr {
        Expr::Const(GaussianRational::from_int(v))
    }

    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn recip(self) -> Expr {
        Expr::Recip(Box::new(self))
    }

    pub fn pow(self, e: i64) -> Expr {
        Expr::Pow(Box::new(self), e)
    }

    pub fn sum(items: Vec<Expr>) -> Expr {
        Expr::Add(items)
    }

    pub fn product(items: Vec<Expr>) -> Expr {
        Expr::Mul(items)
    }

    /// Does `v` occur anywhere in the tree?
    pub fn uses(&self, v: Var) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(u) => *u == v,
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().any(|x| x.uses(v)),
            Expr::Neg(x) | Expr::Recip(x) | Expr::Pow(x, _) => x.uses(v),
        }
    }

    /// Polynomial in `z, zbar` with `zbar` carried by `w` (or `xi, eta` when
    /// `on_xi` is set).
    pub fn from_bipoly(p: &BiPolynomial, on_xi: bool) -> Expr {
        let (hol, anti): (fn(usize) -> Var, fn(usize) -> Var) =
            if on_xi { (Var::Xi, Var::Eta) } else { (Var::Z, Var::W) };
        let terms = p
            .terms()
            .map(|(m, c)| {
                let mut f = vec![Expr::c(c.clone())];
                for j in 0..p.dim() {
                    if m.alpha.get(j) > 0 {
                        f.push(Expr::var(hol(j)).pow(m.alpha.get(j) as i64));
                    }
                    if m.beta.get(j) > 0 {
                        f.push(Expr::var(anti(j)).pow(m.beta.get(j) as i64));
                    }
                }
                Expr::product(f)
            })
            .collect();
        Expr::sum(terms)
    }
}

impl From<GaussianRational> for Expr {
    fn from(v: GaussianRational) -> Self {
        Expr::Const(v)
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, o: Expr) -> Expr {
        Expr::Add(vec![self, o])
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        Expr::Add(vec![self, Expr::Neg(Box::new(o))])
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        Expr::Mul(vec![self, o])
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

/// `sum_j a_j b_j`
pub fn bilinear(a: &[Expr], b: &[Expr]) -> Expr {
    Expr::sum(a.iter().zip(b).map(|(x, y)| x.clone() * y.clone()).collect())
}

pub fn vars(kind: fn(usize) -> Var, n: usize) -> Vec<Expr> {
    (0..n).map(|j| Expr::var(kind(j))).collect()
}
