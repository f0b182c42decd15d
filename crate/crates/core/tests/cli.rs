use std::path::PathBuf;
use std::process::Command;

use bergball::cli::{run_command, Outcome, RunOutput, EXIT_PASS, EXIT_REFUTED, EXIT_USAGE};
use proptest::prelude::*;

fn run(args: &[&str]) -> Outcome {
    run_command(std::iter::once("bergball").chain(args.iter().copied()))
}

fn scenario(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "scenarios", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json(o: &Outcome) -> RunOutput {
    serde_json::from_str(&o.stdout).unwrap()
}

#[test]
fn construct_in_range_prints_symbol() {
    let o = run(&["construct", "--target", "z^(1)*zbar^(1)", "--n", "1"]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.stderr);
    assert!(o.stdout.contains("symbol: `1 + log(t)`"));
    let j = json(&run(&["construct", "--target", "z^(1)*zbar^(1)", "--n", "1", "--format", "json"]));
    let sym = j.symbol.unwrap();
    assert_eq!(sym.text, "1 + log(t)");
    assert_eq!(sym.json["dimension"], 1);
}

#[test]
fn construct_out_of_range_cites_the_criterion() {
    let o = run(&["construct", "--target", "z^(2)*zbar^(2)", "--n", "1", "--format", "json"]);
    assert_eq!(o.code, EXIT_REFUTED);
    let j = json(&o);
    assert!(!j.passed);
    assert!(j.symbol.is_none());
    let w = j.suites[0].checks[0].witness.clone().unwrap();
    assert!(w.contains("d/dz_1 d/dzbar_1") && w.contains("degree 2 > 2N-1 = 1"), "{w}");

    let o = run(&["construct", "--hol", "(2)", "--anti", "(2)", "--n", "1"]);
    assert_eq!(o.code, EXIT_REFUTED);
    let o = run(&["construct", "--hol", "(1)", "--anti", "(1)", "--n", "1"]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.stdout);
}

#[test]
fn identities_example_passes_with_labels() {
    let o = run(&["identities", "--n", "2", "--d", "6", "--samples", "20", "--seed", "7", "--format", "json"]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.stdout);
    let j = json(&o);
    let names: Vec<_> = j.suites.iter().flat_map(|s| s.checks.iter().map(|c| c.name.clone())).collect();
    for want in [
        "E_Delta_a N=2",
        "E_s_Delta(s=4) N=2",
        "chain_B(m=2) N=2",
        "marvelous(m=1) N=2",
        "mobius N=2",
        "affine(j=2) N=2",
    ] {
        assert!(names.iter().any(|n| n == want), "missing {want}");
    }
    assert!(o.stdout.contains("\"label\": \"verified-at-20-points\""));
}

#[test]
fn identities_selector() {
    let o = run(&[
        "identities",
        "--n",
        "1",
        "--samples",
        "3",
        "--select",
        "E_s_Delta=2",
        "--select",
        "mobius",
        "--format",
        "json",
    ]);
    assert_eq!(o.code, EXIT_PASS);
    assert_eq!(json(&o).suites[1].checks.len(), 2);
    assert_eq!(run(&["identities", "--select", "nope"]).code, EXIT_USAGE);
    assert_eq!(run(&["identities", "--select", "E_s_Delta"]).code, EXIT_USAGE);
    assert_eq!(run(&["identities", "--select", "E_s_Delta=x"]).code, EXIT_USAGE);
}

#[test]
fn scenario_files() {
    for f in ["remark_n1.json", "rank_one_z1_n2.json"] {
        let o = run(&["verify-bh", &scenario(f), "--d", "6"]);
        assert_eq!(o.code, EXIT_PASS, "{f}: {}", o.stdout);
    }
    let o = run(&["verify-bh", &scenario("remark_n1_perturbed.json"), "--d", "6"]);
    assert_eq!(o.code, EXIT_REFUTED);
    assert!(o.stdout.contains("| operator identity | fail |"));
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let bad = bad.to_string_lossy().into_owned();
    for args in [
        vec!["frobnicate"],
        vec![],
        vec!["suite", "--n", "0"],
        vec!["suite", "--format", "yaml"],
        vec!["verify-bh", bad.as_str()],
        vec!["verify-bh", "/nonexistent/scenario.json"],
        vec!["report", bad.as_str()],
        vec!["construct", "--n", "1"],
        vec!["construct", "--target", "z^(1,1)", "--n", "1"],
        vec!["construct", "--target", "z^(", "--n", "1"],
        vec!["construct", "--hol", "(1)", "--n", "1"],
    ] {
        let o = run(&args);
        assert_eq!(o.code, EXIT_USAGE, "{args:?}: {}", o.stdout);
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(run(&["--help"]).code, EXIT_PASS);
}

#[test]
fn output_file_and_rerender() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&[
        "verify-bh",
        &scenario("remark_n1_perturbed.json"),
        "--format",
        "json",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_REFUTED);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let parsed: RunOutput = serde_json::from_str(&text).unwrap();
    assert!(!parsed.passed);

    let md = run(&["report", out.to_str().unwrap()]);
    assert_eq!(md.code, EXIT_PASS);
    assert!(md.stdout.starts_with("# bergball verify-bh"));
    assert!(md.stdout.contains("| check | verdict | label | witness |"));
    assert!(md.stdout.contains("result: FAIL"));
    let again = run(&["report", out.to_str().unwrap(), "--format", "json"]);
    assert_eq!(again.stdout, text);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_bergball");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["construct", "--target", "z^(1)*zbar^(1)", "--n", "1"]), Some(0));
    assert_eq!(code(&["construct", "--target", "z^(2)*zbar^(2)", "--n", "1"]), Some(1));
    assert_eq!(code(&["construct"]), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn reports_are_deterministic(seed in 0u64..1_000_000, n in 1u32..=2) {
        let args = ["suite", "--n", &n.to_string(), "--d", "3", "--seed", &seed.to_string(), "--format", "json"];
        let a = run(&args);
        let b = run(&args);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.code == EXIT_PASS, json(&a).passed);
        prop_assert!(a.code == EXIT_PASS || a.code == EXIT_REFUTED);
    }
}
