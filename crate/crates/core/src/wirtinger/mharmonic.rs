use super::expr::{Expr, Var};
use super::jet::{eval_jet_in, Side, SideOps};
use super::points::SamplePoint;
use crate::arith::{GaussianRational, Rational};
use crate::error::Result;
use crate::report::{Check, Label};

/// `z_2 zbar_3 / |1 - z_1|^2` in `C^3`.
pub fn remark_example_n3() -> Expr {
    Expr::var(Var::Z(1))
        * Expr::var(Var::W(2))
        * (Expr::int(1) - Expr::var(Var::Z(0))).recip()
        * (Expr::int(1) - Expr::var(Var::W(0))).recip()
}

/// `z_1 zbar_2 / |1 - z_1|^2 - zbar_2^2 z_2 / (2 (1 - z_1)(1 - zbar_1)^2)` in `C^2`.
pub fn remark_example_n2() -> Expr {
    let a = (Expr::int(1) - Expr::var(Var::Z(0))).recip();
    let b = (Expr::int(1) - Expr::var(Var::W(0))).recip();
    let first = Expr::var(Var::Z(0)) * Expr::var(Var::W(1)) * a.clone() * b.clone();
    let second =
        Expr::c(GaussianRational::from_frac(1, 2)) * Expr::var(Var::W(1)).pow(2) * Expr::var(Var::Z(1)) * a * b.pow(2);
    first - second
}

/// `(inv_laplacian u)(pt)` from an order-2 jet in `z, w`.
pub fn inv_laplacian_at(expr: &Expr, n: usize, pt: &SamplePoint) -> Result<GaussianRational> {
    let sp = Side::Z.space(n, 2);
    let j = eval_jet_in(expr, pt, &sp)?;
    Ok(SideOps { n, side: Side::Z, pt }.inv_laplacian(&j).value())
}

/// Is `inv_laplacian u` zero at every point?
pub fn check_mharmonic(expr: &Expr, n: usize, points: &[SamplePoint]) -> Result<Check> {
    let name = format!("M-harmonic N={n}");
    for pt in points {
        let v = inv_laplacian_at(expr, n, pt)?;
        if !v.is_zero() {
            return Ok(Check::fail(name, format!("at {pt}: inv_laplacian u = {}", v.to_text())));
        }
    }
    Ok(Check::pass(name, Label::VerifiedAtPoints(points.len())))
}

/// Search for a nonzero mixed derivative `d^2 u / dz_j dzbar_l`. A single
/// nonzero value proves that `u` is not pluriharmonic.
pub fn non_pluriharmonic_witness(expr: &Expr, n: usize, points: &[SamplePoint]) -> Result<Option<String>> {
    let sp = Side::Z.space(n, 2);
    for pt in points {
        let jet = eval_jet_in(expr, pt, &sp)?;
        for j in 0..n {
            for l in 0..n {
                let mut e = vec![0u32; 2 * n];
                e[j] += 1;
                e[n + l] += 1;
                let d = jet.derivative(&e).expect("order 2 jet");
                if !d.is_zero() {
                    return Ok(Some(format!("d^2u/dz_{}dzbar_{} = {} at {pt}", j + 1, l + 1, d.to_text())));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenVerdict {
    /// Common ratio, if all valid points agree.
    pub eigenvalue: Option<GaussianRational>,
    /// `j` with `eigenvalue = j(j - N)`, when one exists.
    pub member: Option<u32>,
    pub valid_points: usize,
}

/// Ratio `inv_laplacian(u)/u` at each point where `u` does not vanish.
pub fn check_eigen(expr: &Expr, n: usize, points: &[SamplePoint]) -> Result<EigenVerdict> {
    let mut ratio: Option<GaussianRational> = None;
    let mut agree = true;
    let mut valid = 0;
    for pt in points {
        let sp = Side::Z.space(n, 2);
        let jet = eval_jet_in(expr, pt, &sp)?;
        let Some(inv) = jet.value().inv() else { continue };
        valid += 1;
        let r = &SideOps { n, side: Side::Z, pt }.inv_laplacian(&jet).value() * &inv;
        match &ratio {
            None => ratio = Some(r),
            Some(prev) if *prev != r => agree = false,
            _ => {}
        }
    }
    if valid < 5 || !agree {
        return Ok(EigenVerdict { eigenvalue: None, member: None, valid_points: valid });
    }
    let lambda = ratio.expect("at least five points");
    let member = (0..=n as u32).find(|&j| {
        let v = j as i64 * (j as i64 - n as i64);
        lambda == GaussianRational::from_rational(Rational::from_integer(v.into()))
    });
    Ok(EigenVerdict { eigenvalue: Some(lambda), member, valid_points: valid })
}
