//! Registry of the kernel identities checked pointwise with exact jets.

use std::fmt;

use super::expr::{bilinear, vars, Expr, Var};
use super::jet::{eval_jet_in, eval_value, Side, SideOps};
use super::kernels::{
    affine_lhs, affine_rhs, defining_xi, defining_z, inner_xi_z, inner_z_xi, inv_kernel, mobius_lhs, mobius_rhs,
    power_kernel, weighted_kernel, z_weighted_kernel, MobiusParam,
};
use super::points::SamplePoint;
use crate::arith::{factorial, GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::report::{Check, Label};
use crate::symbolic::pm_polynomial;

#[derive(Clone, Debug, PartialEq)]
pub enum Identity {
    /// `(|E|^2 - Delta)_xi` of the plain kernel.
    EDeltaA,
    /// `(|E|^2 - Delta)_xi` of the weighted kernel.
    EDeltaB,
    /// `(|E+s|^2 - Delta)_xi` of the `s`-th kernel power.
    ESDelta(u32),
    /// Full chain of level `m` on the plain kernel.
    ChainA(u32),
    /// Full chain of level `m` on the weighted kernel.
    ChainB(u32),
    /// `h^(-m-1) p_m(inv_laplacian)` on the weighted kernel.
    Marvelous(u32),
    Mobius(MobiusParam),
    Affine(MobiusParam, usize),
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::EDeltaA => write!(f, "E_Delta_a"),
            Identity::EDeltaB => write!(f, "E_Delta_b"),
            Identity::ESDelta(s) => write!(f, "E_s_Delta(s={s})"),
            Identity::ChainA(m) => write!(f, "chain_A(m={m})"),
            Identity::ChainB(m) => write!(f, "chain_B(m={m})"),
            Identity::Marvelous(m) => write!(f, "marvelous(m={m})"),
            Identity::Mobius(_) => write!(f, "mobius"),
            Identity::Affine(_, j) => write!(f, "affine(j={})", j + 1),
        }
    }
}

impl Identity {
    /// Look up an identity by registry name. `param` is `s` or `m` for the
    /// parametrized entries and the (one based) coordinate for `affine`.
    pub fn from_name(name: &str, param: Option<u32>, n: usize) -> Result<Identity> {
        let need = |what: &str| {
            param.ok_or_else(|| Error::PreconditionViolation(format!("`{name}` needs a parameter {what}")))
        };
        Ok(match name {
            "E_Delta_a" => Identity::EDeltaA,
            "E_Delta_b" => Identity::EDeltaB,
            "E_s_Delta" => {
                let s = need("s")?;
                if s == 0 {
                    return Err(Error::PreconditionViolation("E_s_Delta needs s >= 1".into()));
                }
                Identity::ESDelta(s)
            }
            "chain_A" => Identity::ChainA(need("m")?),
            "chain_B" => Identity::ChainB(need("m")?),
            "marvelous" => Identity::Marvelous(need("m")?),
            "mobius" => Identity::Mobius(MobiusParam::default_for(n)),
            "affine" => {
                let j = param.unwrap_or(1);
                if j == 0 || j as usize > n {
                    return Err(Error::PreconditionViolation(format!("affine coordinate {j} out of 1..={n}")));
                }
                Identity::Affine(MobiusParam::default_for(n), j as usize - 1)
            }
            other => return Err(Error::UnknownKernel(other.to_string())),
        })
    }

    /// The standard list: `s <= 4`, chain and marvelous levels `m <= 2`,
    /// and the automorphism identities for every coordinate.
    pub fn standard_suite(n: usize) -> Vec<Identity> {
        let mut v = vec![Identity::EDeltaA, Identity::EDeltaB];
        v.extend((1..=4).map(Identity::ESDelta));
        v.extend((1..=2).map(Identity::ChainA));
        v.extend((1..=2).map(Identity::ChainB));
        v.extend((1..=2).map(Identity::Marvelous));
        v.push(Identity::Mobius(MobiusParam::default_for(n)));
        v.extend((0..n).map(|j| Identity::Affine(MobiusParam::default_for(n), j)));
        v
    }

    /// Jet order needed on the `xi` side.
    pub fn lhs_order(&self) -> u32 {
        match self {
            Identity::EDeltaA | Identity::EDeltaB | Identity::ESDelta(_) => 2,
            Identity::ChainA(m) | Identity::ChainB(m) | Identity::Marvelous(m) => 2 * (m + 1),
            Identity::Mobius(_) | Identity::Affine(..) => 0,
        }
    }

    /// Exact values of every displayed side at `pt`: left side first, then
    /// the right side, then any intermediate closed form.
    pub fn sides(&self, n: usize, pt: &SamplePoint, margin: u32) -> Result<Vec<GaussianRational>> {
        let xi_ops = SideOps { n, side: Side::Xi, pt };
        let z_ops = SideOps { n, side: Side::Z, pt };
        let xi_space = Side::Xi.space(n, self.lhs_order() + margin);
        let z_space = Side::Z.space(n, 2 + margin);
        let on_xi = |e: &Expr| eval_jet_in(e, pt, &xi_space);
        let on_z = |e: &Expr| eval_jet_in(e, pt, &z_space);
        Ok(match self {
            Identity::EDeltaA => {
                let lhs = xi_ops.shifted_pair(0, &on_xi(&inv_kernel(n))?).value();
                let rhs = z_ops.e_ebar(&on_z(&z_weighted_kernel(n, 0))?).value();
                let middle =
                    (inner_z_xi(n) * inner_xi_z(n) - bilinear(&vars(Var::Z, n), &vars(Var::W, n))) * power_kernel(n, 2);
                vec![lhs, rhs, eval_value(&middle, pt)?]
            }
            Identity::EDeltaB => {
                let lhs = xi_ops.shifted_pair(0, &on_xi(&weighted_kernel(n))?).value();
                let rhs = z_ops.shifted_pair(0, &on_z(&z_weighted_kernel(n, 0))?).value();
                let a = Expr::int(1) - inner_z_xi(n);
                let b = Expr::int(1) - inner_xi_z(n);
                let middle = (Expr::int(n as i64 - 1) * a * b + defining_z(n) * defining_xi(n)) * power_kernel(n, 2);
                vec![lhs, rhs, eval_value(&middle, pt)?]
            }
            Identity::ESDelta(s) => {
                let lhs = xi_ops.shifted_pair(*s as i64, &on_xi(&power_kernel(n, *s))?).value();
                let s2 = (*s as i64) * (*s as i64);
                let rhs = Expr::int(s2) * defining_z(n) * power_kernel(n, s + 1);
                vec![lhs, eval_value(&rhs, pt)?]
            }
            Identity::ChainA(m) => {
                let lhs = xi_ops.chain(*m, &on_xi(&inv_kernel(n))?).value();
                let f = factorial(*m);
                let c = GaussianRational::from_rational(Rational::from_integer(&f * &f));
                let rhs = z_ops.e_ebar(&on_z(&z_weighted_kernel(n, *m))?).value();
                vec![lhs, &rhs * &c]
            }
            Identity::ChainB(m) => {
                let lhs = xi_ops.chain(*m, &on_xi(&weighted_kernel(n))?).value();
                let f = factorial(*m);
                let c = GaussianRational::from_rational(Rational::from_integer(&f * &f));
                let rhs = z_ops.shifted_pair(0, &on_z(&z_weighted_kernel(n, *m))?).value();
                vec![lhs, &rhs * &c]
            }
            Identity::Marvelous(m) => {
                let q = pm_polynomial(*m, n);
                let raw = xi_ops.poly_inv_laplacian(q.coeffs(), &on_xi(&weighted_kernel(n))?).value();
                let h = eval_value(&defining_xi(n), pt)?;
                let hinv = h.pow(*m + 1).inv().ok_or_else(|| Error::PoleAtPoint(pt.to_string()))?;
                let rhs = z_ops.shifted_pair(0, &on_z(&z_weighted_kernel(n, *m))?).value();
                vec![&raw * &hinv, rhs]
            }
            Identity::Mobius(p) => {
                check_dim(p, n)?;
                vec![eval_value(&mobius_lhs(p), pt)?, eval_value(&mobius_rhs(p), pt)?]
            }
            Identity::Affine(p, j) => {
                check_dim(p, n)?;
                vec![eval_value(&affine_lhs(p, *j), pt)?, eval_value(&affine_rhs(p, *j)?, pt)?]
            }
        })
    }
}

fn check_dim(p: &MobiusParam, n: usize) -> Result<()> {
    if p.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
    }
    Ok(())
}

/// Evaluate both sides at each point. Exact agreement everywhere gives a
/// pass labelled with the number of points; the first disagreement is a
/// counterexample. `rhs_scale` multiplies the right side (`1` normally; any
/// other value is a negative control).
pub fn verify_pointwise_identity(
    id: &Identity,
    n: usize,
    points: &[SamplePoint],
    margin: u32,
    rhs_scale: &GaussianRational,
) -> Result<Check> {
    let name = format!("{id} N={n}");
    for pt in points {
        let sides = id.sides(n, pt, margin)?;
        let lhs = &sides[0];
        for (k, other) in sides.iter().enumerate().skip(1) {
            let other = if k == 1 { other * rhs_scale } else { other.clone() };
            if *lhs != other {
                let what = if k == 1 { "rhs" } else { "closed form" };
                return Ok(Check::fail(
                    name,
                    format!("at {pt}: lhs = {} but {what} = {}", lhs.to_text(), other.to_text()),
                ));
            }
        }
    }
    Ok(Check::pass(name, Label::VerifiedAtPoints(points.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wirtinger::points::random_points;

    fn one() -> GaussianRational {
        GaussianRational::one()
    }

    #[test]
    fn first_order_identities_hold() {
        for n in 1..=2 {
            let pts = random_points(n, 4, 5, true);
            for id in [Identity::EDeltaA, Identity::EDeltaB, Identity::ESDelta(1), Identity::ESDelta(3)] {
                let c = verify_pointwise_identity(&id, n, &pts, 0, &one()).unwrap();
                assert!(c.passed(), "{c:?}");
            }
        }
    }

    #[test]
    fn doubled_rhs_is_refuted() {
        let pts = random_points(1, 3, 5, true);
        let c = verify_pointwise_identity(&Identity::EDeltaA, 1, &pts, 0, &GaussianRational::from_int(2)).unwrap();
        assert!(c.failed());
        assert!(c.witness.unwrap().starts_with("at z=("));
    }

    #[test]
    fn automorphism_identities_hold() {
        for n in 1..=2 {
            let pts = random_points(n, 4, 9, true);
            let c =
                verify_pointwise_identity(&Identity::Mobius(MobiusParam::default_for(n)), n, &pts, 0, &one()).unwrap();
            assert!(c.passed(), "{c:?}");
            for j in 0..n {
                let id = Identity::Affine(MobiusParam::default_for(n), j);
                let c = verify_pointwise_identity(&id, n, &pts, 0, &one()).unwrap();
                assert!(c.passed(), "{c:?}");
            }
        }
    }

    #[test]
    fn chain_identities_hold_at_level_one() {
        let pts = random_points(2, 2, 1, true);
        for id in [Identity::ChainA(1), Identity::ChainB(1), Identity::Marvelous(1)] {
            let c = verify_pointwise_identity(&id, 2, &pts, 0, &one()).unwrap();
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn registry_names() {
        assert_eq!(Identity::from_name("E_s_Delta", Some(2), 1).unwrap(), Identity::ESDelta(2));
        assert!(Identity::from_name("E_s_Delta", None, 1).is_err());
        assert!(matches!(Identity::from_name("bogus", None, 1), Err(Error::UnknownKernel(_))));
        assert_eq!(Identity::standard_suite(2).len(), 2 + 4 + 2 + 2 + 2 + 1 + 2);
    }
}
