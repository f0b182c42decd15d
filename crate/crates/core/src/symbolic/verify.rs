use super::bipoly::{BiPolynomial, Monomial};
use super::ops::{apply_chain, apply_d, apply_inv_laplacian, ChainOrder, DMode};
use crate::arith::{GaussianRational, MultiIndex};
use crate::error::{Error, Result};
use crate::report::{Check, Label};

/// Describe the first coefficient where `lhs` and `rhs` differ.
pub fn first_difference(lhs: &BiPolynomial, rhs: &BiPolynomial) -> Option<String> {
    let diff = lhs.sub(rhs);
    let first = diff.terms().next().map(|(m, _)| m.clone());
    first.map(|m| {
        format!(
            "coefficient of z^{} zbar^{}: {} vs {}",
            m.alpha,
            m.beta,
            lhs.coeff(&m.alpha, &m.beta).to_text(),
            rhs.coeff(&m.alpha, &m.beta).to_text()
        )
    })
}

/// `j^2 h^(j+1) = (j(j-N) - inv_laplacian) h^j` with `h = 1 - |z|^2`.
pub fn verify_h_recursion(j: u32, n: usize) -> Check {
    h_recursion_check(j, n, 0)
}

/// Same check with the left factor `j^2` replaced by `j^2 + perturb`.
pub fn h_recursion_check(j: u32, n: usize, perturb: i64) -> Check {
    let name = format!("h-recursion j={j} N={n}");
    let h = BiPolynomial::defining(n);
    let hj = h.pow(j);
    let lhs = h.pow(j + 1).scale(&GaussianRational::from_int((j * j) as i64 + perturb));
    let jj = j as i64;
    let rhs = hj.scale(&GaussianRational::from_int(jj * (jj - n as i64))).sub(&apply_inv_laplacian(&hj));
    match first_difference(&lhs, &rhs) {
        None => Check::pass(name, Label::ExactProof),
        Some(w) => Check::fail(name, w),
    }
}

/// Compare the chain and `p_m` forms of `D_m` on every monomial of total
/// degree at most `degree_bound`.
pub fn verify_do_identity(m: u32, n: usize, degree_bound: u32) -> Check {
    do_identity_check(m, n, degree_bound, ChainOrder::ZeroFirst)
}

pub fn do_identity_check(m: u32, n: usize, degree_bound: u32, order: ChainOrder) -> Check {
    let name = format!("D_m chain vs p_m form m={m} N={n} degree<={degree_bound}");
    let idx = MultiIndex::up_to_degree(n, degree_bound);
    for a in &idx {
        for b in &idx {
            if a.degree() + b.degree() > degree_bound {
                continue;
            }
            let q = BiPolynomial::monomial(n, GaussianRational::one(), a.clone(), b.clone());
            let chain = apply_chain(m, &q, order);
            let pm = match apply_d(m, &q, DMode::PmForm) {
                Ok(p) => p,
                Err(e) => return Check::fail(name, format!("q = {q}: {e}")),
            };
            if let Some(w) = first_difference(&chain, &pm) {
                return Check::fail(name, format!("q = {q}: {w}"));
            }
        }
    }
    Check::pass(name, Label::VerifiedAtDegree(degree_bound))
}

/// True iff no mixed term survives; the witness is the first mixed monomial.
pub fn is_pluriharmonic(p: &BiPolynomial) -> (bool, Option<Monomial>) {
    match p.terms().find(|(m, _)| m.is_mixed()) {
        Some((m, _)) => (false, Some(m.clone())),
        None => (true, None),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Characterization {
    /// `sum_j (conj g_j - conj g_j(0)) (u_j - u_j(0))`
    pub sum: BiPolynomial,
    pub sum_is_zero: bool,
    /// Verdict of the mixed-term test on `sum_j conj(g_j) u_j`.
    pub pluriharmonic: bool,
    pub witness: Option<Monomial>,
}

impl Characterization {
    /// The two verdicts must agree.
    pub fn consistent(&self) -> bool {
        self.sum_is_zero == self.pluriharmonic
    }

    pub fn to_check(&self, name: impl Into<String>) -> Check {
        let detail = format!(
            "sum {}; pluriharmonic={}",
            if self.sum_is_zero { "is zero".to_string() } else { format!("= {}", self.sum) },
            self.pluriharmonic
        );
        if self.consistent() {
            Check::pass(name, Label::ExactProof).with_detail(detail)
        } else {
            Check::fail(name, detail)
        }
    }
}

pub fn characterization_pluri(g: &[BiPolynomial], u: &[BiPolynomial]) -> Result<Characterization> {
    if g.len() != u.len() {
        return Err(Error::PreconditionViolation(format!(
            "{} antiholomorphic factors but {} holomorphic ones",
            g.len(),
            u.len()
        )));
    }
    let Some(n) = g.first().or(u.first()).map(BiPolynomial::dim) else {
        return Err(Error::PreconditionViolation("empty lists".into()));
    };
    for p in g.iter().chain(u) {
        if p.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
        }
        if !p.is_holomorphic() {
            return Err(Error::NotHolomorphic(p.to_string()));
        }
    }
    let mut sum = BiPolynomial::zero(n);
    let mut full = BiPolynomial::zero(n);
    for (gj, uj) in g.iter().zip(u) {
        let gb = gj.conj();
        let g0 = BiPolynomial::constant(n, gj.at_zero().conj());
        let u0 = BiPolynomial::constant(n, uj.at_zero());
        sum = sum.add(&gb.sub(&g0).mul(&uj.sub(&u0)));
        full = full.add(&gb.mul(uj));
    }
    let (pluriharmonic, witness) = is_pluriharmonic(&full);
    Ok(Characterization { sum_is_zero: sum.is_zero(), sum, pluriharmonic, witness })
}
