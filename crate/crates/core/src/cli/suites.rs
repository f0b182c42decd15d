//! Check collections behind the `identities`, `operators` and `construct` subcommands.

use crate::arith::{monomial_norm_sq, GaussianRational, MultiIndex};
use crate::bergman::{
    berezin_series, operator_equal, series_equal, toeplitz_matrix, toeplitz_product, CoeffSeries, QuasiHomSymbol,
};
use crate::bhsuite::{bounded_symbol_series_check, commutator_analysis, remark_identity_check};
use crate::error::{Error, Result};
use crate::mellin::{product_symbol, range_decision, RangeDecision};
use crate::report::{Check, Label, Report};
use crate::symbolic::{verify_do_identity, verify_h_recursion, BiPolynomial};
use crate::wirtinger::{random_points, verify_pointwise_identity, Identity};

/// Parse `name` or `name=param` against the identity registry.
pub fn parse_selector(sel: &str, n: usize) -> Result<Identity> {
    let (name, param) = match sel.split_once('=') {
        Some((name, p)) => {
            let p = p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad parameter in selector `{sel}`")))?;
            (name.trim(), Some(p))
        }
        None => (sel.trim(), None),
    };
    Identity::from_name(name, param, n)
}

/// Exact polynomial identities (h-recursion for `j <= 5`, the `D_m` chain
/// identity for `m <= 2` on degree `<= d`) followed by the pointwise kernel
/// identities at `samples` seeded points.
pub fn identities_reports(n: usize, d: u32, samples: usize, seed: u64, select: &[Identity]) -> Result<Vec<Report>> {
    let mut sym = Report::new(format!("symbolic identities N={n}"));
    for j in 1..=5 {
        sym.push(verify_h_recursion(j, n));
    }
    for m in 0..=2 {
        sym.push(verify_do_identity(m, n, d));
    }
    let ids = if select.is_empty() { Identity::standard_suite(n) } else { select.to_vec() };
    let pts = random_points(n, samples, seed, true);
    let one = GaussianRational::one();
    let mut jet = Report::new(format!("kernel identities N={n} samples={samples} seed={seed}"));
    for id in &ids {
        jet.push(verify_pointwise_identity(id, n, &pts, 0, &one)?);
    }
    Ok(vec![sym, jet])
}

/// `T_(conj u) = (T_u)^*` on the columns `|alpha| <= d`. The matrices are in
/// the monomial basis, so entries are compared after weighting by the norms.
fn adjoint_check(u: &QuasiHomSymbol, d: u32) -> Result<Check> {
    let name = format!("adjoint of T_({u})");
    let a = toeplitz_matrix(u, d)?;
    let b = toeplitz_matrix(&u.conj(), d)?;
    for (x, y) in [(&a, &b), (&b, &a)] {
        for (row, col, v) in x.entries() {
            if row.degree() > d {
                continue;
            }
            let w = y.entry(col, row).scale(&monomial_norm_sq(col));
            let v = v.conj().scale(&monomial_norm_sq(row));
            if w != v {
                return Ok(Check::fail(name, format!("column {col} row {row}: {w} vs {v}")));
            }
        }
    }
    Ok(Check::pass(name, Label::VerifiedAtDegree(d)))
}

/// Consistency of the truncated operator and Berezin machinery at `(n, d)`.
pub fn operators_report(n: usize, d: u32) -> Result<Report> {
    let mut r = Report::new(format!("operator consistency N={n} D={d}"));
    let e1 = MultiIndex::unit(n, 0);
    let z1 = BiPolynomial::z(n, 0);
    let zb1 = BiPolynomial::zbar(n, 0);
    let zl = BiPolynomial::z(n, n - 1);
    let one = GaussianRational::one();

    let mixed = QuasiHomSymbol::term(n, one.clone(), e1.clone().add(&e1), e1.clone(), -1, false)?
        .add(&QuasiHomSymbol::term(n, GaussianRational::i(), MultiIndex::zero(n), e1.clone(), 0, true)?)?;
    for u in [QuasiHomSymbol::from_bipoly(&z1.mul(&zb1).add(&zl)), mixed] {
        r.push(adjoint_check(&u, d)?);
    }

    let pluri = z1.add(&zb1.mul(&zb1)).add(&zl.scale(&GaussianRational::from_frac(1, 3)));
    let mut c =
        series_equal(&berezin_series(&QuasiHomSymbol::from_bipoly(&pluri), d)?, &CoeffSeries::from_bipoly(&pluri, d))?;
    c.name = format!("Berezin transform fixes {pluri}");
    r.push(c);

    // T_phi T_psi = T_(phi psi) whenever psi is holomorphic.
    let phi = z1.add(&zb1);
    let psi = zl.mul(&z1);
    let mut c = operator_equal(
        &toeplitz_product(&QuasiHomSymbol::from_bipoly(&phi), &QuasiHomSymbol::from_bipoly(&psi), d)?,
        &toeplitz_matrix(&QuasiHomSymbol::from_bipoly(&phi.mul(&psi)), d)?,
        d,
    )?;
    c.name = format!("T_({phi}) T_({psi}) = T_(product)");
    r.push(c);

    let u = product_symbol(&e1, &e1, n)?;
    let mut c = operator_equal(
        &toeplitz_product(&QuasiHomSymbol::from_bipoly(&z1), &QuasiHomSymbol::from_bipoly(&zb1), d)?,
        &toeplitz_matrix(&u, d)?,
        d,
    )?;
    c.name = format!("T_(z_1) T_(zbar_1) = T_({u})");
    r.push(c);

    if n >= 2 {
        r.push(bounded_symbol_series_check(n, d)?);
    }
    r.push(remark_identity_check(n, d)?);
    let rep = commutator_analysis(&z1, &zb1, d)?;
    for mut c in rep.checks {
        c.name = format!("{}: {}", rep.suite, c.name);
        r.push(c);
    }
    Ok(r)
}

/// What `construct` should build.
pub enum ConstructTarget {
    /// Preimage of a polynomial under the Berezin transform.
    Range(BiPolynomial),
    /// Symbol of `T_(z^hol) T_(zbar^anti)`.
    Product { hol: MultiIndex, anti: MultiIndex },
}

/// The report plus the constructed symbol when there is one.
pub fn construct_report(target: &ConstructTarget, n: usize, d: u32) -> Result<(Report, Option<QuasiHomSymbol>)> {
    match target {
        ConstructTarget::Range(f) => {
            let mut r = Report::new(format!("range preimage of {f} N={n}"));
            match range_decision(f, n)? {
                RangeDecision::Violation { j, l, degree } => {
                    r.push(Check::fail(
                        "range criterion",
                        format!("d/dz_{j} d/dzbar_{l} of the target has total degree {degree} > 2N-1 = {}", 2 * n - 1),
                    ));
                    Ok((r, None))
                }
                RangeDecision::InRange { symbol, .. } => {
                    r.push(Check::pass("range criterion", Label::ExactProof));
                    let mut c = series_equal(&berezin_series(&symbol, d)?, &CoeffSeries::from_bipoly(f, d))?;
                    c.name = "Berezin transform of the preimage".into();
                    r.push(c);
                    Ok((r, Some(symbol)))
                }
            }
        }
        ConstructTarget::Product { hol, anti } => {
            let mut r = Report::new(format!("product symbol of T_(z^{hol}) T_(zbar^{anti}) N={n}"));
            match product_symbol(hol, anti, n) {
                Err(e @ Error::NotRepresentable { .. }) => {
                    r.push(Check::fail("product is a Toeplitz operator", e.to_string()));
                    Ok((r, None))
                }
                Err(e) => Err(e),
                Ok(u) => {
                    let prod = toeplitz_product(
                        &QuasiHomSymbol::from_bipoly(&BiPolynomial::monomial(
                            n,
                            GaussianRational::one(),
                            hol.clone(),
                            MultiIndex::zero(n),
                        )),
                        &QuasiHomSymbol::from_bipoly(&BiPolynomial::monomial(
                            n,
                            GaussianRational::one(),
                            MultiIndex::zero(n),
                            anti.clone(),
                        )),
                        d,
                    )?;
                    let mut c = operator_equal(&prod, &toeplitz_matrix(&u, d)?, d)?;
                    c.name = "product is a Toeplitz operator".into();
                    r.push(c);
                    Ok((r, Some(u)))
                }
            }
        }
    }
}
