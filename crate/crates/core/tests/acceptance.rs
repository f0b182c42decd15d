//! Acceptance criteria, one line per criterion with its time budget.
//!
//! Runs without the libtest harness so the summary lines are always shown.

use std::time::{Duration, Instant};

use bergball::arith::{rat, GaussianRational, MultiIndex, Rational};
use bergball::bergman::{
    berezin_series, operator_equal, series_equal, toeplitz_matrix, toeplitz_product, CoeffSeries, QuasiHomSymbol,
};
use bergball::bhsuite::{
    ahern_check, bh_facts, bounded_symbol_series_check, commutator_matrix, construct_bh_example, product_sum,
    random_bh_scenario, remark_identity_check, verify_bh_scenario,
};
use bergball::mellin::{preimage_monomial, product_symbol, range_decision, RangeDecision, WeightedMonomial};
use bergball::symbolic::{parse_bipoly, verify_do_identity, verify_h_recursion, BiPolynomial};
use bergball::wirtinger::{
    check_mharmonic, non_pluriharmonic_witness, random_points, remark_example_n2, remark_example_n3,
    verify_pointwise_identity, Identity,
};
use bergball::Error;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check_passed(c: &bergball::report::Check) -> Outcome {
    ensure(c.passed(), || format!("{}: {:?}", c.name, c.witness))
}

fn lib<T>(r: bergball::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn g(r: Rational) -> GaussianRational {
    GaussianRational::from_rational(r)
}

fn c1_do_identity() -> Outcome {
    for (n, m) in [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)] {
        check_passed(&verify_do_identity(m, n, 6))?;
    }
    Ok(())
}

fn c2_h_recursion() -> Outcome {
    for n in 1..=3 {
        for j in 0..=5 {
            check_passed(&verify_h_recursion(j, n))?;
        }
    }
    Ok(())
}

fn c3_kernel_identities() -> Outcome {
    for n in 1..=2 {
        let pts = random_points(n, 20, 2024, true);
        for id in Identity::standard_suite(n) {
            let c = lib(verify_pointwise_identity(&id, n, &pts, 0, &GaussianRational::one()))?;
            check_passed(&c)?;
            ensure(c.label == bergball::report::Label::VerifiedAtPoints(20), || format!("{id}: {}", c.label))?;
        }
    }
    Ok(())
}

fn c4_mharmonic_examples() -> Outcome {
    for (n, expr) in [(3, remark_example_n3()), (2, remark_example_n2())] {
        let pts = random_points(n, 20, 11, true);
        check_passed(&lib(check_mharmonic(&expr, n, &pts))?)?;
        let w = lib(non_pluriharmonic_witness(&expr, n, &pts))?;
        ensure(w.is_some(), || format!("no mixed-derivative witness for the N={n} example"))?;
    }
    Ok(())
}

fn c5_bounded_symbol() -> Outcome {
    check_passed(&lib(bounded_symbol_series_check(2, 6))?)?;
    // Same series against a target typed in by hand.
    let e1 = MultiIndex::unit(2, 0);
    let u = lib(QuasiHomSymbol::term(2, GaussianRational::one(), e1.clone(), e1, -1, false))?;
    let target =
        lib(parse_bipoly("1/2 - 1/2*z^(1,0)*zbar^(1,0) - 1/2*z^(0,1)*zbar^(0,1) + z^(1,0)*zbar^(1,0)", Some(2)))?;
    check_passed(&lib(series_equal(&lib(berezin_series(&u, 6))?, &CoeffSeries::from_bipoly(&target, 6)))?)?;
    for n in [2, 3] {
        check_passed(&lib(remark_identity_check(n, 6))?)?;
    }
    Ok(())
}

fn c6_construction() -> Outcome {
    for n in 1..=2usize {
        let bound = 2 * n as u32 + 1;
        let idx = MultiIndex::up_to_degree(n, bound);
        let mut count = 0;
        for a in &idx {
            for b in &idx {
                for ell in 0..=bound / 2 {
                    let w = WeightedMonomial::new(a.clone(), b.clone(), ell);
                    if w.weight() > bound {
                        continue;
                    }
                    let u = lib(preimage_monomial(a, b, ell, n))?;
                    let c =
                        lib(series_equal(&lib(berezin_series(&u, 6))?, &CoeffSeries::from_bipoly(&w.to_bipoly(), 6)))?;
                    ensure(c.passed(), || format!("alpha={a} beta={b} ell={ell} N={n}: {:?}", c.witness))?;
                    count += 1;
                }
            }
        }
        ensure(count > 0, || "no targets enumerated".into())?;
    }

    let one = MultiIndex::unit(1, 0);
    let u = lib(preimage_monomial(&one, &one, 0, 1))?;
    let expected = lib(QuasiHomSymbol::parse("1 + log(t)", Some(1)))?;
    ensure(u == expected, || format!("preimage of z zbar is {u}"))?;
    let z = QuasiHomSymbol::from_bipoly(&BiPolynomial::z(1, 0));
    let zb = QuasiHomSymbol::from_bipoly(&BiPolynomial::zbar(1, 0));
    let prod = lib(toeplitz_product(&z, &zb, 8))?;
    let tu = lib(toeplitz_matrix(&u, 8))?;
    check_passed(&lib(operator_equal(&prod, &tu, 8))?)?;
    // Diagonal k/(k+1) computed by hand: <zbar z^k, z^(k-1)> / ||z^(k-1)||^2.
    for k in 0..=8u32 {
        let m = MultiIndex::new(vec![k]);
        let want = g(rat(k as i64, k as i64 + 1));
        for mat in [&prod, &tu] {
            ensure(mat.entry(&m, &m) == want, || format!("diagonal entry {k}: {}", mat.entry(&m, &m)))?;
        }
    }
    Ok(())
}

fn c7_not_representable() -> Outcome {
    let two = MultiIndex::new(vec![2]);
    match product_symbol(&two, &two, 1) {
        Err(Error::NotRepresentable { degree: 4, bound: 3 }) => {}
        other => return Err(format!("expected NotRepresentable, got {other:?}")),
    }
    let f = lib(parse_bipoly("z^(2)*zbar^(2)", Some(1)))?;
    match lib(range_decision(&f, 1))? {
        RangeDecision::Violation { j: 1, l: 1, degree: 2 } => Ok(()),
        other => Err(format!("expected a degree-2 violation, got {other:?}")),
    }
}

fn c8_commutator_growth() -> Outcome {
    let z = BiPolynomial::z(1, 0);
    let zb = BiPolynomial::zbar(1, 0);
    for d in [2u32, 4, 6] {
        let c = lib(commutator_matrix(&z, &zb, d))?;
        ensure(c.rank() == d as usize + 1, || format!("rank at D={d} is {}", c.rank()))?;
        for k in 0..=d {
            let m = MultiIndex::new(vec![k]);
            let k = k as i64;
            let want = g(rat(-1, (k + 1) * (k + 2)));
            ensure(c.entry(&m, &m) == want, || format!("D={d} entry {k}: {}", c.entry(&m, &m)))?;
        }
    }
    Ok(())
}

fn c9_bh_biconditional() -> Outcome {
    let one = BiPolynomial::constant(1, GaussianRational::one());
    let sc = lib(construct_bh_example(1, std::slice::from_ref(&one), std::slice::from_ref(&one), &[], &[]))?;
    let rep = lib(verify_bh_scenario(&sc, 8))?;
    ensure(rep.passed(), || rep.to_markdown())?;
    // T_(-1) + 1 (tensor) 1 is diag(0, -1, -1, ...).
    let lhs = lib(product_sum(&sc, 8))?;
    for k in 0..=8u32 {
        let m = MultiIndex::new(vec![k]);
        let target = GaussianRational::from_int(if k == 0 { 0 } else { -1 });
        ensure(lhs.entry(&m, &m) == target, || format!("entry {k}: {}", lhs.entry(&m, &m)))?;
    }
    ensure(lhs.entries().all(|(r, c, _)| r == c), || "off-diagonal entry in the product sum".into())?;

    let mut holds = 0;
    for seed in 0..20u64 {
        let n = 1 + (seed / 2 % 2) as usize;
        let sc = lib(random_bh_scenario(seed, n))?;
        let f = lib(bh_facts(&sc, 5))?;
        ensure(f.consistent(), || format!("seed {seed} N={n}: {f:?}"))?;
        holds += f.operator_identity.passed() as usize;
    }
    ensure((1..20).contains(&holds), || format!("{holds}/20 identities held; both directions not exercised"))
}

fn c10_ahern() -> Outcome {
    for n in 1..=2 {
        check_passed(&lib(ahern_check(n, 6))?)?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("1 D_m operator identity", 60, c1_do_identity),
        ("2 h-recursion", 5, c2_h_recursion),
        ("3 kernel identity suite", 120, c3_kernel_identities),
        ("4 M-harmonic examples", 60, c4_mharmonic_examples),
        ("5 bounded symbol series and identity", 60, c5_bounded_symbol),
        ("6 Mellin construction", 180, c6_construction),
        ("7 non-representable product", 1, c7_not_representable),
        ("8 commutator growth", 10, c8_commutator_growth),
        ("9 product-sum biconditional", 300, c9_bh_biconditional),
        ("10 Ahern-type identities", 60, c10_ahern),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let t = Instant::now();
        let res = run();
        let el = t.elapsed();
        let in_budget = el <= Duration::from_secs(budget);
        let ok = res.is_ok() && in_budget;
        failed += !ok as usize;
        let why = match (&res, in_budget) {
            (Err(e), _) => format!(" : {e}"),
            (Ok(()), false) => " : over budget".to_string(),
            _ => String::new(),
        };
        println!("criterion {name}: {} ({:.2}s of {budget}s){why}", if ok { "PASS" } else { "FAIL" }, el.as_secs_f64());
    }
    println!("acceptance: {}/10 passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
