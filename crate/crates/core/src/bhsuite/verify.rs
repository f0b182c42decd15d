use super::scenario::{split_pluriharmonic, BHScenario};
use crate::arith::GaussianRational;
use crate::bergman::{
    hankel_product, operator_equal, rank_one_matrix, toeplitz_matrix, toeplitz_product, OperatorMatrix, QuasiHomSymbol,
};
use crate::error::{Error, Result};
use crate::report::{Check, Label, Report};
use crate::symbolic::{is_pluriharmonic, BiPolynomial};

/// The three facts of the theorem, evaluated independently.
#[derive(Clone, Debug, PartialEq)]
pub struct BhFacts {
    pub operator_identity: Check,
    pub pluriharmonic_condition: Check,
    pub product_condition: Check,
}

impl BhFacts {
    pub fn consistent(&self) -> bool {
        self.operator_identity.passed() == (self.pluriharmonic_condition.passed() && self.product_condition.passed())
    }
}

/// `sum_j T_{phi_j} T_{psi_j}` on columns `|alpha| <= d`.
pub fn product_sum(sc: &BHScenario, d: u32) -> Result<OperatorMatrix> {
    let mut acc = OperatorMatrix::zero(sc.dim, d);
    for p in &sc.pairs {
        let phi = QuasiHomSymbol::from_bipoly(&p.phi());
        let psi = QuasiHomSymbol::from_bipoly(&p.psi());
        acc = acc.add(&toeplitz_product(&phi, &psi, d)?)?;
    }
    Ok(acc)
}

/// `T_h + sum_l x_l (tensor) y_l` on columns `|alpha| <= d`.
pub fn scenario_rhs(sc: &BHScenario, d: u32) -> Result<OperatorMatrix> {
    let mut acc = toeplitz_matrix(&sc.h, d)?;
    for (x, y) in &sc.rank_one {
        acc = acc.add(&rank_one_matrix(x, y, d)?)?;
    }
    Ok(acc)
}

pub fn bh_facts(sc: &BHScenario, d: u32) -> Result<BhFacts> {
    sc.validate()?;
    let n = sc.dim;

    let lhs = product_sum(sc, d)?;
    let rhs = scenario_rhs(sc, d)?;
    let mut a = operator_equal(&lhs, &rhs, d)?;
    a.name = "operator identity".into();

    // h - sum conj(g_j) u_j
    let mut gu = BiPolynomial::zero(n);
    for p in &sc.pairs {
        gu = gu.add(&p.g.conj().mul(&p.u));
    }
    let diff = sc.h.sub(&QuasiHomSymbol::from_bipoly(&gu))?;
    let b_name = "h - sum conj(g_j) u_j is pluriharmonic";
    let b = match diff.to_bipoly() {
        None => Check::fail(b_name, format!("{diff} is not a polynomial")),
        Some(p) => match is_pluriharmonic(&p) {
            (true, _) => Check::pass(b_name, Label::ExactProof),
            (false, w) => Check::fail(b_name, format!("mixed term {}", w.map(|m| format!("{m}")).unwrap_or_default())),
        },
    };

    // sum phi_j psi_j = h + (1-|z|^2)^(N+1) sum x_l conj(y_l)
    let mut lhs_sym = BiPolynomial::zero(n);
    for p in &sc.pairs {
        lhs_sym = lhs_sym.add(&p.phi().mul(&p.psi()));
    }
    let mut xy = BiPolynomial::zero(n);
    for (x, y) in &sc.rank_one {
        xy = xy.add(&x.mul(&y.conj()));
    }
    let tail = QuasiHomSymbol::from_bipoly(&BiPolynomial::defining(n).pow(n as u32 + 1).mul(&xy));
    let gap = QuasiHomSymbol::from_bipoly(&lhs_sym).sub(&sc.h.add(&tail)?)?;
    let c_name = "sum phi_j psi_j = h + (1-|z|^2)^(N+1) sum x_l conj(y_l)";
    let c = if gap.is_zero_function() {
        Check::pass(c_name, Label::ExactProof)
    } else {
        Check::fail(c_name, format!("difference {gap}"))
    };
    Ok(BhFacts { operator_identity: a, pluriharmonic_condition: b, product_condition: c })
}

/// Evaluate the operator identity and both symbol conditions, then check
/// that the identity holds exactly when both conditions do.
pub fn verify_bh_scenario(sc: &BHScenario, d: u32) -> Result<Report> {
    let facts = bh_facts(sc, d)?;
    let mut r = Report::new(format!("BH scenario N={} D={d}", sc.dim));
    let summary = format!(
        "identity={} conditions={}/{}",
        facts.operator_identity.passed(),
        facts.pluriharmonic_condition.passed(),
        facts.product_condition.passed()
    );
    let bicond = if facts.consistent() {
        Check::pass("identity iff both conditions", Label::VerifiedAtDegree(d)).with_detail(summary)
    } else {
        Check::fail("identity iff both conditions", format!("falsification at degree {d}: {summary}"))
    };
    r.push(facts.operator_identity);
    r.push(facts.pluriharmonic_condition);
    r.push(facts.product_condition);
    r.push(bicond);
    Ok(r)
}

/// Rank of `sum_j T_{phi_j} T_{psi_j} - T_h` on columns `|alpha| <= d`.
pub fn finite_rank_defect(sc: &BHScenario, d: u32) -> Result<usize> {
    let lhs = product_sum(sc, d)?;
    Ok(lhs.sub(&toeplitz_matrix(&sc.h, d)?)?.rank())
}

/// Which case of the commutator criterion applies, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommutingClass {
    BothHolomorphic,
    BothAntiholomorphic,
    /// `c1 phi + c2 psi` is constant.
    Dependent(GaussianRational, GaussianRational),
    None,
}

pub fn classify_pair(phi: &BiPolynomial, psi: &BiPolynomial) -> CommutingClass {
    if phi.is_holomorphic() && psi.is_holomorphic() {
        return CommutingClass::BothHolomorphic;
    }
    if phi.is_antiholomorphic() && psi.is_antiholomorphic() {
        return CommutingClass::BothAntiholomorphic;
    }
    let n = phi.dim();
    let p0 = phi.sub(&BiPolynomial::constant(n, phi.at_zero()));
    let q0 = psi.sub(&BiPolynomial::constant(n, psi.at_zero()));
    if p0.is_zero() {
        return CommutingClass::Dependent(GaussianRational::one(), GaussianRational::zero());
    }
    // q0 = lambda p0 with lambda read off the first term of p0
    let (m, c) = p0.terms().next().expect("nonzero");
    let lambda = &q0.coeff(&m.alpha, &m.beta) / c;
    if q0 == p0.scale(&lambda) {
        CommutingClass::Dependent(lambda, GaussianRational::from_int(-1))
    } else {
        CommutingClass::None
    }
}

/// `[T_phi, T_psi]` on columns `|alpha| <= d`.
pub fn commutator_matrix(phi: &BiPolynomial, psi: &BiPolynomial, d: u32) -> Result<OperatorMatrix> {
    let a = QuasiHomSymbol::from_bipoly(phi);
    let b = QuasiHomSymbol::from_bipoly(psi);
    toeplitz_product(&a, &b, d)?.sub(&toeplitz_product(&b, &a, d)?)
}

/// Commutator rank at degree `d` against the classification of the symbol pair.
pub fn commutator_analysis(phi: &BiPolynomial, psi: &BiPolynomial, d: u32) -> Result<Report> {
    for p in [phi, psi] {
        split_pluriharmonic(p)?;
    }
    let m = commutator_matrix(phi, psi, d)?;
    let rank = m.rank();
    let class = classify_pair(phi, psi);
    let finite = class != CommutingClass::None;
    let mut r = Report::new(format!("commutator [T_({phi}), T_({psi})]"));
    let detail = format!("rank at degree {d} = {rank}; class {class:?}");
    let name = "commutator rank matches classification";
    let check = if finite == m.is_zero() {
        Check::pass(name, Label::VerifiedAtDegree(d)).with_detail(detail)
    } else {
        Check::fail(name, detail)
    };
    r.push(check);
    Ok(r)
}

/// Hankel-product sum vanishing against the symbolic pluriharmonicity test.
pub fn hankel_equivalences(phis: &[BiPolynomial], psis: &[BiPolynomial], d: u32) -> Result<Report> {
    if phis.len() != psis.len() || phis.is_empty() {
        return Err(Error::PreconditionViolation("need equally many phi and psi, at least one".into()));
    }
    let n = phis[0].dim();
    let mut sum = OperatorMatrix::zero(n, d);
    let mut cond = BiPolynomial::zero(n);
    for (phi, psi) in phis.iter().zip(psis) {
        let sp = split_pluriharmonic(phi)?;
        let sq = split_pluriharmonic(psi)?;
        // P(phi) (psi - P(psi)) = f conj(v)
        cond = cond.add(&sp.f.mul(&sq.g.conj()));
        let a = QuasiHomSymbol::from_bipoly(phi);
        let b = QuasiHomSymbol::from_bipoly(psi);
        sum = sum.add(&hankel_product(&a, &b, d)?)?;
    }
    let zero = sum.is_zero();
    let (pluri, witness) = is_pluriharmonic(&cond);
    let mut r = Report::new("Hankel product equivalences");
    let detail = format!(
        "sum H*H zero at degree {d}: {zero} (rank {}); sum P(phi)(psi - P(psi)) pluriharmonic: {pluri}",
        sum.rank()
    );
    let name = "sum H*H = 0 iff sum P(phi)(psi - P(psi)) pluriharmonic";
    if zero == pluri {
        r.push(Check::pass(name, Label::VerifiedAtDegree(d)).with_detail(detail));
    } else {
        let w = witness.map(|m| format!(" mixed term {m}")).unwrap_or_default();
        r.push(Check::fail(name, format!("{detail};{w}")));
    }
    Ok(r)
}
