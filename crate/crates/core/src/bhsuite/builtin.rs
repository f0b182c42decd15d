use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::verify::commutator_analysis;
use crate::arith::{GaussianRational, MultiIndex, Rational};
use crate::bergman::{
    berezin_series, operator_equal, series_equal, toeplitz_matrix, toeplitz_product, CoeffSeries, OperatorMatrix,
    QuasiHomSymbol,
};
use crate::error::Result;
use crate::report::{Check, Label, Report};
use crate::symbolic::BiPolynomial;
use crate::wirtinger::{
    check_mharmonic, non_pluriharmonic_witness, random_points, remark_example_n2, remark_example_n3, Expr,
};

/// `(N-1) T_{z_1} T_{zbar_1} - sum_{j>=2} T_{z_j} T_{zbar_j} = T_h` with
/// `h = -1 + N |z_1|^2 / |z|^2`, on columns `|alpha| <= d`.
pub fn remark_identity_check(n: usize, d: u32) -> Result<Check> {
    let name = format!("bounded non-pluriharmonic symbol identity N={n}");
    if n < 2 {
        return Ok(Check::skipped(name, "needs N >= 2"));
    }
    let mut lhs = OperatorMatrix::zero(n, d);
    for j in 0..n {
        let z = QuasiHomSymbol::from_bipoly(&BiPolynomial::z(n, j));
        let zb = QuasiHomSymbol::from_bipoly(&BiPolynomial::zbar(n, j));
        let w = if j == 0 { n as i64 - 1 } else { -1 };
        lhs = lhs.add(&toeplitz_product(&z, &zb, d)?.scale(&GaussianRational::from_int(w)))?;
    }
    let h = remark_symbol(n);
    let mut c = operator_equal(&lhs, &toeplitz_matrix(&h, d)?, d)?;
    c.name = name;
    Ok(c)
}

/// `-1 + N |z_1|^2 t^-1`
pub fn remark_symbol(n: usize) -> QuasiHomSymbol {
    let e1 = MultiIndex::unit(n, 0);
    let mut s = QuasiHomSymbol::constant(n, GaussianRational::from_int(-1));
    let t = QuasiHomSymbol::term(n, GaussianRational::from_int(n as i64), e1.clone(), e1, -1, false)
        .expect("integrable for N >= 1");
    s = s.add(&t).expect("same dimension");
    s
}

/// `B(|z_1|^2 / |z|^2) = (1 - |z|^2)/N + |z_1|^2` to degree `d`.
pub fn bounded_symbol_series_check(n: usize, d: u32) -> Result<Check> {
    let e1 = MultiIndex::unit(n, 0);
    let u = QuasiHomSymbol::term(n, GaussianRational::one(), e1.clone(), e1.clone(), -1, false)?;
    let inv_n = GaussianRational::from_rational(Rational::new(1.into(), (n as i64).into()));
    let target = BiPolynomial::defining(n).scale(&inv_n).add(&BiPolynomial::z(n, 0).mul(&BiPolynomial::zbar(n, 0)));
    let mut c = series_equal(&berezin_series(&u, d)?, &CoeffSeries::from_bipoly(&target, d))?;
    c.name = format!("Berezin transform of |z_1|^2/|z|^2, N={n}");
    Ok(c)
}

/// `B(((|a|+N)/N) zbar^a - zbar^a t^-|a|) = (|a|/N) zbar^a |z|^2` for all `1 <= |a| < 2N`.
pub fn ahern_check(n: usize, d: u32) -> Result<Check> {
    let name = format!("Ahern-type Berezin identities N={n}");
    let zero = MultiIndex::zero(n);
    let mut count = 0;
    for k in 1..2 * n as u32 {
        for a in MultiIndex::of_degree(n, k) {
            let lead = Rational::new((k as i64 + n as i64).into(), (n as i64).into());
            let u = QuasiHomSymbol::term(n, GaussianRational::from_rational(lead), zero.clone(), a.clone(), 0, false)?
                .sub(&QuasiHomSymbol::term(n, GaussianRational::one(), zero.clone(), a.clone(), -(k as i64), false)?)?;
            let target = BiPolynomial::monomial(n, GaussianRational::one(), zero.clone(), a.clone())
                .mul(&BiPolynomial::norm_sq(n))
                .scale_rational(&Rational::new((k as i64).into(), (n as i64).into()));
            let c = series_equal(&berezin_series(&u, d)?, &CoeffSeries::from_bipoly(&target, d))?;
            if c.failed() {
                return Ok(Check::fail(name, format!("alpha = {a}: {}", c.witness.unwrap_or_default())));
            }
            count += 1;
        }
    }
    Ok(Check::pass(name, Label::VerifiedAtDegree(d)).with_detail(format!("{count} multi-indices")))
}

fn mharmonic_checks(r: &mut Report, n: usize, example_dim: usize, expr: Expr, seed: u64) -> Result<()> {
    let name = format!("M-harmonic remark example in C^{example_dim}");
    let wname = format!("non-pluriharmonic witness for the C^{example_dim} example");
    if n < example_dim {
        r.push(Check::skipped(name, format!("needs N >= {example_dim}")));
        r.push(Check::skipped(wname, format!("needs N >= {example_dim}")));
        return Ok(());
    }
    let pts = random_points(example_dim, 20, seed, true);
    let mut c = check_mharmonic(&expr, example_dim, &pts)?;
    c.name = name;
    r.push(c);
    r.push(match non_pluriharmonic_witness(&expr, example_dim, &pts)? {
        Some(w) => Check::pass(wname, Label::ExactProof).with_detail(w),
        None => Check::fail(wname, "every mixed second derivative vanished at the sample points"),
    });
    Ok(())
}

/// Nonzero pluriharmonic monomial: `c z^a` or `c zbar^a` with `1 <= |a| <= 2`.
fn random_pluri_monomial(rng: &mut ChaCha8Rng, n: usize) -> BiPolynomial {
    let k = rng.gen_range(1..=2);
    let opts = MultiIndex::of_degree(n, k);
    let a = opts[rng.gen_range(0..opts.len())].clone();
    let c = GaussianRational::from_int(rng.gen_range(1..=3));
    if rng.gen_bool(0.5) {
        BiPolynomial::monomial(n, c, a, MultiIndex::zero(n))
    } else {
        BiPolynomial::monomial(n, c, MultiIndex::zero(n), a)
    }
}

/// Ranks of `T_phi T_psi` at `d` and `d + 2` for seeded pairs: every rank is
/// positive and at least one grows. Two antiholomorphic factors of degree 2
/// kill every column below degree 4, so `d` is raised to at least 4.
pub fn zero_product_check(n: usize, d: u32, seed: u64) -> Result<Check> {
    let name = format!("zero-product sanity N={n}");
    let d = d.max(4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut grew = false;
    let mut log = Vec::new();
    for _ in 0..4 {
        let phi = random_pluri_monomial(&mut rng, n);
        let psi = random_pluri_monomial(&mut rng, n);
        let (a, b) = (QuasiHomSymbol::from_bipoly(&phi), QuasiHomSymbol::from_bipoly(&psi));
        let r0 = toeplitz_product(&a, &b, d)?.rank();
        let r1 = toeplitz_product(&a, &b, d + 2)?.rank();
        if r0 == 0 {
            return Ok(Check::fail(name, format!("T_({phi}) T_({psi}) vanishes on degree {d}")));
        }
        grew |= r1 > r0;
        log.push(format!("({phi})*({psi}): {r0} -> {r1}"));
    }
    if grew {
        Ok(Check::pass(name, Label::VerifiedAtDegree(d + 2)).with_detail(log.join("; ")))
    } else {
        Ok(Check::fail(name, format!("no rank growth: {}", log.join("; "))))
    }
}

/// Paper-example checks at dimension `n` and degree `d`.
pub fn builtin_suites(n: usize, d: u32, seed: u64) -> Result<Report> {
    let mut r = Report::new(format!("builtin N={n} D={d} seed={seed}"));
    r.push(remark_identity_check(n, d)?);
    if n >= 2 {
        r.push(bounded_symbol_series_check(n, d)?);
    } else {
        r.push(Check::skipped("Berezin transform of |z_1|^2/|z|^2", "needs N >= 2"));
    }
    mharmonic_checks(&mut r, n, 2, remark_example_n2(), seed)?;
    mharmonic_checks(&mut r, n, 3, remark_example_n3(), seed)?;
    r.push(ahern_check(n, d)?);

    let z0 = BiPolynomial::z(n, 0);
    let zb0 = BiPolynomial::zbar(n, 0);
    let spot = [
        (z0.clone(), zb0.clone()),
        (z0.clone(), BiPolynomial::z(n, n - 1)),
        (z0.add(&zb0), z0.add(&zb0).scale(&GaussianRational::from_int(2))),
    ];
    for (phi, psi) in spot {
        let rep = commutator_analysis(&phi, &psi, d)?;
        for mut c in rep.checks {
            c.name = format!("{}: {}", rep.suite, c.name);
            r.push(c);
        }
    }
    r.push(zero_product_check(n, d, seed)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimension_skips_honestly() {
        let r = builtin_suites(1, 4, 7).unwrap();
        assert!(r.passed(), "{}", r.to_markdown());
        assert!(r.checks.iter().any(|c| c.verdict == crate::report::Verdict::Skipped));
    }

    #[test]
    fn remark_identity_small() {
        assert!(remark_identity_check(2, 3).unwrap().passed());
        assert!(bounded_symbol_series_check(2, 4).unwrap().passed());
        assert!(ahern_check(1, 4).unwrap().passed());
    }
}
