use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{GaussianRational, Rational};
use crate::bergman::RadialProfile;
use crate::error::{Error, Result};
use crate::symbolic::UnivariatePoly;

/// Reduced quotient of polynomials in `zeta` over `Q`, denominator monic.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunctionQ {
    num: UnivariatePoly,
    den: UnivariatePoly,
}

impl RationalFunctionQ {
    pub fn new(num: UnivariatePoly, den: UnivariatePoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionFailure("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::constant(Rational::zero()));
        }
        let g = gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading();
        Ok(RationalFunctionQ { num: num.scale(&lead.recip()), den: den.scale(&lead.recip()) })
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunctionQ { num: UnivariatePoly::constant(c), den: UnivariatePoly::constant(Rational::one()) }
    }

    /// `prod (zeta - r)` over `num_roots` divided by `prod (zeta - r)` over `den_roots`, times `c`.
    pub fn from_roots(c: Rational, num_roots: &[i64], den_roots: &[i64]) -> Result<Self> {
        let prod = |roots: &[i64]| {
            roots.iter().fold(UnivariatePoly::constant(Rational::one()), |acc, &r| {
                acc.mul(&UnivariatePoly::linear_root(Rational::from_integer(r.into())))
            })
        };
        Self::new(prod(num_roots).scale(&c), prod(den_roots))
    }

    pub fn numerator(&self) -> &UnivariatePoly {
        &self.num
    }

    pub fn denominator(&self) -> &UnivariatePoly {
        &self.den
    }

    /// `None` at a pole.
    pub fn eval(&self, zeta: &Rational) -> Option<Rational> {
        let d = self.den.eval(zeta);
        (!d.is_zero()).then(|| self.num.eval(zeta) / d)
    }

    pub fn is_proper(&self) -> bool {
        self.num.is_zero() || self.num.degree() < self.den.degree()
    }
}

fn gcd(a: &UnivariatePoly, b: &UnivariatePoly) -> UnivariatePoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r;
    }
    a.scale(&a.leading().recip())
}

impl fmt::Debug for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num.to_string_in("zeta"))
        } else {
            write!(f, "({}) / ({})", self.num.to_string_in("zeta"), self.den.to_string_in("zeta"))
        }
    }
}

/// One term `coeff / (zeta - pole)^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleTerm {
    pub pole: i64,
    pub order: u32,
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionForm {
    pub polynomial: UnivariatePoly,
    pub poles: Vec<PoleTerm>,
}

impl PartialFractionForm {
    /// Value at `zeta`, or `None` at a pole.
    pub fn eval(&self, zeta: &Rational) -> Option<Rational> {
        let mut acc = self.polynomial.eval(zeta);
        for t in &self.poles {
            let d = zeta - Rational::from_integer(t.pole.into());
            if d.is_zero() {
                return None;
            }
            acc += &t.coeff / num_traits::pow(d, t.order as usize);
        }
        Some(acc)
    }

    pub fn max_pole(&self) -> Option<i64> {
        self.poles.iter().map(|t| t.pole).max()
    }
}

impl fmt::Display for PartialFractionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.polynomial.is_zero() {
            parts.push(self.polynomial.to_string_in("zeta"));
        }
        for t in &self.poles {
            let base = match t.pole {
                0 => "zeta".to_string(),
                p if p > 0 => format!("(zeta - {p})"),
                p => format!("(zeta + {})", -p),
            };
            let den = if t.order == 1 { base } else { format!("{base}^{}", t.order) };
            parts.push(format!("{}/{den}", t.coeff));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Integer roots of `p` with multiplicities; errors if anything else remains.
fn integer_roots(p: &UnivariatePoly) -> Result<Vec<(i64, u32)>> {
    let Some(deg) = p.degree() else { return Ok(Vec::new()) };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = p.leading();
    let bound =
        p.coeffs()[..deg].iter().map(|c| (c / &lead).abs()).max().unwrap_or_else(Rational::zero).ceil().to_integer();
    let bound: i64 = i64::try_from(bound).map_err(|_| Error::UnsupportedPoles("root bound too large".into()))? + 1;
    let mut rest = p.clone();
    let mut roots = Vec::new();
    for r in -bound..=bound {
        let lin = UnivariatePoly::linear_root(Rational::from_integer(r.into()));
        let mut mult = 0;
        loop {
            let (q, rem) = rest.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    }
    if rest.degree() != Some(0) {
        return Err(Error::UnsupportedPoles(format!(
            "denominator factor {} has no integer roots",
            rest.to_string_in("zeta")
        )));
    }
    Ok(roots)
}

/// Exact decomposition into a polynomial plus simple and double integer poles.
pub fn partial_fractions(rf: &RationalFunctionQ) -> Result<PartialFractionForm> {
    let (polynomial, rem) = rf.num.div_rem(&rf.den);
    let roots = integer_roots(&rf.den)?;
    let mut poles = Vec::new();
    for &(p, m) in &roots {
        if m > 2 {
            return Err(Error::UnsupportedPoles(format!("pole of order {m} at zeta = {p}")));
        }
        let pr = Rational::from_integer(p.into());
        let lin = UnivariatePoly::linear_root(pr.clone());
        // den = (zeta - p)^m * q
        let (q, _) = rf.den.div_rem(&lin.pow(m));
        let qv = q.eval(&pr);
        let lead = rem.eval(&pr) / &qv;
        if m == 2 {
            // derivative of rem / q at p
            let d = (rem.derivative().eval(&pr) * &qv - rem.eval(&pr) * q.derivative().eval(&pr)) / (&qv * &qv);
            if !d.is_zero() {
                poles.push(PoleTerm { pole: p, order: 1, coeff: d });
            }
            if !lead.is_zero() {
                poles.push(PoleTerm { pole: p, order: 2, coeff: lead });
            }
        } else if !lead.is_zero() {
            poles.push(PoleTerm { pole: p, order: 1, coeff: lead });
        }
    }
    Ok(PartialFractionForm { polynomial, poles })
}

/// `c / (zeta - p)` becomes `c t^(-p)`; `c / (zeta - p)^2` becomes `-c t^(-p) log t`.
pub fn invert_mellin(pf: &PartialFractionForm) -> Result<RadialProfile> {
    if !pf.polynomial.is_zero() {
        return Err(Error::ImproperFunction(format!(
            "polynomial part {} has no inverse Mellin transform",
            pf.polynomial.to_string_in("zeta")
        )));
    }
    let mut r = RadialProfile::zero();
    for t in &pf.poles {
        let c = GaussianRational::from_rational(t.coeff.clone());
        match t.order {
            1 => r.add_term(-t.pole, false, c),
            2 => r.add_term(-t.pole, true, -c),
            o => return Err(Error::UnsupportedPoles(format!("order {o}"))),
        }
    }
    Ok(r)
}
