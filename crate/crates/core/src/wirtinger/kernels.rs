use num_traits::{One, Zero};

use super::expr::{bilinear, vars, Expr, Var};
use crate::arith::{rational_sqrt, GaussianRational, Rational};
use crate::error::{Error, Result};

/// `<z, xi> = sum z_j conj(xi_j)`, with `eta` standing for `conj(xi)`.
pub fn inner_z_xi(n: usize) -> Expr {
    bilinear(&vars(Var::Z, n), &vars(Var::Eta, n))
}

/// `<xi, z> = sum xi_j conj(z_j)`
pub fn inner_xi_z(n: usize) -> Expr {
    bilinear(&vars(Var::Xi, n), &vars(Var::W, n))
}

/// `1 - |z|^2`
pub fn defining_z(n: usize) -> Expr {
    Expr::int(1) - bilinear(&vars(Var::Z, n), &vars(Var::W, n))
}

/// `1 - |xi|^2`
pub fn defining_xi(n: usize) -> Expr {
    Expr::int(1) - bilinear(&vars(Var::Xi, n), &vars(Var::Eta, n))
}

/// `1 / |1 - <z, xi>|^2`
pub fn inv_kernel(n: usize) -> Expr {
    (Expr::int(1) - inner_z_xi(n)).recip() * (Expr::int(1) - inner_xi_z(n)).recip()
}

/// `(1 - |xi|^2) / |1 - <z, xi>|^2`
pub fn weighted_kernel(n: usize) -> Expr {
    defining_xi(n) * inv_kernel(n)
}

/// `1 / |1 - <z, xi>|^(2s)`
pub fn power_kernel(n: usize, s: u32) -> Expr {
    inv_kernel(n).pow(s as i64)
}

/// `(1 - |z|^2)^(m+1) / |1 - <z, xi>|^(2(m+1))`
pub fn z_weighted_kernel(n: usize, m: u32) -> Expr {
    defining_z(n).pow(m as i64 + 1) * power_kernel(n, m + 1)
}

/// Parameter `omega` of the ball automorphism `phi_omega`, restricted to
/// points where `sqrt(1 - |omega|^2)` is rational.
#[derive(Clone, Debug, PartialEq)]
pub struct MobiusParam {
    pub omega: Vec<GaussianRational>,
    /// `sqrt(1 - |omega|^2)`
    pub s: Rational,
}

impl MobiusParam {
    pub fn new(omega: Vec<GaussianRational>) -> Result<Self> {
        let norm: Rational = omega.iter().map(GaussianRational::norm_sqr).sum();
        let one = Rational::one();
        if norm >= one {
            return Err(Error::PreconditionViolation(format!(
                "automorphism parameter must lie in the open ball, |w|^2 = {norm}"
            )));
        }
        let s = rational_sqrt(&(&one - &norm))
            .ok_or_else(|| Error::IrrationalMobius(format!("1 - |w|^2 = {} is not a rational square", one - norm)))?;
        Ok(MobiusParam { omega, s })
    }

    /// `(3/5)` for `N = 1`, otherwise `(12/25, 9/25 i, 0, ...)`; both give `s = 4/5`.
    pub fn default_for(n: usize) -> Self {
        let mut omega = vec![GaussianRational::zero(); n];
        if n == 1 {
            omega[0] = GaussianRational::from_frac(3, 5);
        } else {
            omega[0] = GaussianRational::from_frac(12, 25);
            omega[1] = GaussianRational::new(Rational::zero(), crate::arith::rat(9, 25));
        }
        MobiusParam::new(omega).expect("default parameter is admissible")
    }

    pub fn dim(&self) -> usize {
        self.omega.len()
    }

    fn norm_sq(&self) -> Rational {
        self.omega.iter().map(GaussianRational::norm_sqr).sum()
    }

    /// `phi_omega(x)` for expressions `x`. With `conj` set, returns the
    /// conjugate map written in the conjugate variables `x`.
    pub fn map_expr(&self, x: &[Expr], conj: bool) -> Vec<Expr> {
        let om: Vec<GaussianRational> = self.omega.iter().map(|c| if conj { c.conj() } else { c.clone() }).collect();
        let n = om.len();
        let s = GaussianRational::from_rational(self.s.clone());
        let ns = self.norm_sq();
        // <x, omega> with the conjugate slot on omega
        let pair = Expr::sum(x.iter().zip(&om).map(|(xi, oi)| xi.clone() * Expr::c(oi.conj())).collect());
        let denom = (Expr::int(1) - pair.clone()).recip();
        (0..n)
            .map(|k| {
                let mut num = vec![Expr::c(om[k].clone()), -(Expr::c(s.clone()) * x[k].clone())];
                if !ns.is_zero() {
                    let coef = (GaussianRational::one() - s.clone()) * om[k].scale(&(Rational::one() / &ns));
                    num.push(-(Expr::c(coef) * pair.clone()));
                }
                Expr::sum(num) * denom.clone()
            })
            .collect()
    }

    /// `phi_omega(v)` for a constant vector.
    pub fn map_point(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        let pair: GaussianRational = v.iter().zip(&self.omega).map(|(a, b)| a * &b.conj()).sum();
        let d = (GaussianRational::one() - pair.clone())
            .inv()
            .ok_or_else(|| Error::PoleAtPoint("<v, omega> = 1".into()))?;
        let s = GaussianRational::from_rational(self.s.clone());
        let ns = self.norm_sq();
        Ok((0..v.len())
            .map(|k| {
                let mut num = &self.omega[k] - &(&s * &v[k]);
                if !ns.is_zero() {
                    let p = (&pair * &self.omega[k]).scale(&(Rational::one() / &ns));
                    num = &num - &(&(GaussianRational::one() - s.clone()) * &p);
                }
                &num * &d
            })
            .collect())
    }
}

/// `1 - <phi(z), phi(xi)>`
pub fn mobius_lhs(p: &MobiusParam) -> Expr {
    let n = p.dim();
    let pz = p.map_expr(&vars(Var::Z, n), false);
    let pxi_bar = p.map_expr(&vars(Var::Eta, n), true);
    Expr::int(1) - bilinear(&pz, &pxi_bar)
}

/// `(1 - |omega|^2)(1 - <z, xi>) / ((1 - <z, omega>)(1 - <omega, xi>))`
pub fn mobius_rhs(p: &MobiusParam) -> Expr {
    let n = p.dim();
    let one = Rational::one();
    let c = GaussianRational::from_rational(&one - p.norm_sq());
    let z_om = Expr::sum((0..n).map(|j| Expr::var(Var::Z(j)) * Expr::c(p.omega[j].conj())).collect());
    let om_xi = Expr::sum((0..n).map(|j| Expr::c(p.omega[j].clone()) * Expr::var(Var::Eta(j))).collect());
    Expr::c(c) * (Expr::int(1) - inner_z_xi(n)) * (Expr::int(1) - z_om).recip() * (Expr::int(1) - om_xi).recip()
}

/// `z_j / (1 - <z, omega>)`
pub fn affine_lhs(p: &MobiusParam, j: usize) -> Expr {
    let n = p.dim();
    let z_om = Expr::sum((0..n).map(|k| Expr::var(Var::Z(k)) * Expr::c(p.omega[k].conj())).collect());
    Expr::var(Var::Z(j)) * (Expr::int(1) - z_om).recip()
}

/// `[omega_j - <phi(z), omega> + (1 - omega_j) <phi(z), phi(e_j)>] / (1 - |omega|^2)`
///
/// The factor `1 - omega_j` sits outside the inner product; inside the
/// conjugate-linear slot it would become `1 - conj(omega_j)`.
pub fn affine_rhs(p: &MobiusParam, j: usize) -> Result<Expr> {
    let n = p.dim();
    let pz = p.map_expr(&vars(Var::Z, n), false);
    let mut e = vec![GaussianRational::zero(); n];
    e[j] = GaussianRational::one();
    let pe = p.map_point(&e)?;
    let with_omega = Expr::sum((0..n).map(|k| pz[k].clone() * Expr::c(p.omega[k].conj())).collect());
    let with_pe = Expr::sum((0..n).map(|k| pz[k].clone() * Expr::c(pe[k].conj())).collect());
    let one = Rational::one();
    let scale = GaussianRational::from_rational(one / (Rational::one() - p.norm_sq()));
    let coef = GaussianRational::one() - p.omega[j].clone();
    Ok(Expr::c(scale) * (Expr::c(p.omega[j].clone()) - with_omega + Expr::c(coef) * with_pe))
}

/// Optional parameters for [`kernel_expr`].
#[derive(Clone, Debug, Default)]
pub struct KernelParams {
    pub s: Option<u32>,
    pub omega: Option<Vec<GaussianRational>>,
    pub j: Option<usize>,
}

/// Build a registered kernel by name.
pub fn kernel_expr(name: &str, n: usize, params: &KernelParams) -> Result<Expr> {
    let mobius = || match &params.omega {
        Some(o) if o.len() != n => Err(Error::DimensionMismatch { expected: n, found: o.len() }),
        Some(o) => MobiusParam::new(o.clone()),
        None => Ok(MobiusParam::default_for(n)),
    };
    let j = params.j.unwrap_or(0);
    if j >= n {
        return Err(Error::PreconditionViolation(format!("coordinate index {j} out of range for N={n}")));
    }
    match name {
        "inv_kernel" => Ok(inv_kernel(n)),
        "weighted_kernel" => Ok(weighted_kernel(n)),
        "power_kernel" => Ok(power_kernel(n, params.s.unwrap_or(1))),
        "mobius_lhs" => Ok(mobius_lhs(&mobius()?)),
        "mobius_rhs" => Ok(mobius_rhs(&mobius()?)),
        "affine_lhs" => Ok(affine_lhs(&mobius()?, j)),
        "affine_rhs" => affine_rhs(&mobius()?, j),
        other => Err(Error::UnknownKernel(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::wirtinger::jet::eval_value;
    use crate::wirtinger::points::random_points;

    #[test]
    fn registry() {
        assert!(matches!(kernel_expr("nope", 1, &KernelParams::default()), Err(Error::UnknownKernel(_))));
        let p = KernelParams { s: Some(2), ..Default::default() };
        assert_eq!(kernel_expr("power_kernel", 1, &p).unwrap(), inv_kernel(1).pow(2));
        let irr = KernelParams { omega: Some(vec![GaussianRational::from_frac(1, 2)]), ..Default::default() };
        assert!(matches!(kernel_expr("mobius_lhs", 1, &irr), Err(Error::IrrationalMobius(_))));
    }

    #[test]
    fn default_parameters_are_rational() {
        assert_eq!(MobiusParam::default_for(1).s, rat(4, 5));
        assert_eq!(MobiusParam::default_for(2).s, rat(4, 5));
    }

    #[test]
    fn automorphism_is_an_involution_swapping_zero_and_omega() {
        for n in 1..=3 {
            let p = MobiusParam::default_for(n);
            let zero = vec![GaussianRational::zero(); n];
            assert_eq!(p.map_point(&zero).unwrap(), p.omega);
            assert_eq!(p.map_point(&p.omega).unwrap(), zero);
            for pt in random_points(n, 5, 3, true) {
                let back = p.map_point(&p.map_point(&pt.z).unwrap()).unwrap();
                assert_eq!(back, pt.z);
            }
        }
    }

    #[test]
    fn kernels_are_real_on_the_diagonal() {
        for pt in random_points(2, 5, 11, true) {
            let v = eval_value(&weighted_kernel(2), &pt).unwrap();
            assert!(v.is_real());
            let k = GaussianRational::from_rational(rat(1, 1));
            assert!(eval_value(&(inv_kernel(2) * Expr::c(k)), &pt).unwrap().is_real());
        }
    }
}
