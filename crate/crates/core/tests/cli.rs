use std::process::Command;

use gamma_sing::cli::report::{parse, serialize, GammaResult, ResultBody};
use gamma_sing::cli::{run, Outcome};
use gamma_sing::gamma::{lambda, Flavor};
use gamma_sing::invariants::{intersection_multiplicity, Multiplicity, SingularitySpec};
use gamma_sing::poly::rat;
use gamma_sing::Ideal;
use serde_json::Value;

fn gamma_sing(args: &[&str]) -> Outcome {
    run(std::iter::once("gamma-sing").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = gamma_sing(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn gamma_result(args: &[&str]) -> GammaResult {
    let out = gamma_sing(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    match parse(&out.stdout).unwrap().result {
        ResultBody::Gamma(g) => g,
        other => panic!("unexpected result {other:?}"),
    }
}

/// Re-derives a reported gamma value from its serialized witness alone.
fn reverify(spec: &SingularitySpec, flavor: Flavor, r: &GammaResult) {
    let f = spec.representative();
    let ideal = Ideal::new(r.witness_ideal.iter().map(|p| p.0.clone()).collect());
    assert!(ideal.contains_ideal(&flavor.ideal(spec).unwrap()).unwrap());
    assert!(ideal.is_complete_intersection().unwrap());
    assert_eq!(ideal.colength().unwrap(), r.witness_colength);
    let one_plus = rat(1, 1) + &r.alpha.0;
    let base = &one_plus * &one_plus * rat(r.witness_colength as i64, 1);
    match &r.witness_g {
        Some(g) => {
            assert!(ideal.contains(&g.0).unwrap());
            let i = intersection_multiplicity(&f, &g.0);
            assert_eq!(i, Multiplicity::Finite(r.intersection.unwrap()));
            let l = lambda(r.intersection.unwrap(), r.witness_colength, &r.alpha.0);
            assert_eq!(r.lambda.as_ref().unwrap().0, l);
            assert_eq!(r.gamma.0, l.clone().max(base));
        }
        None => assert_eq!(r.gamma.0, base),
    }
}

#[test]
fn invariants_of_d6() {
    let v = json(&["invariants", "--type", "Dk", "--k", "6"]);
    let r = &v["result"];
    assert_eq!(r["tau"], 6);
    assert_eq!(r["kappa"], 8);
    assert_eq!(r["mu"], 6);
    assert_eq!(r["delta"], 4);
    assert_eq!(r["tau_es"], 6);
    assert_eq!(v["schema"], "gamma-sing/1");

    // The pencil element realizes kappa.
    let f = SingularitySpec::D(6).representative();
    let g = gamma_sing::poly::parse_polynomial(r["kappa_witness"]["g"].as_str().unwrap()).unwrap();
    assert_eq!(intersection_multiplicity(&f, &g), Multiplicity::Finite(8));
}

#[test]
fn gamma_search_of_m4() {
    let r = gamma_result(&["gamma-search", "--type", "Mk", "--k", "4", "--alpha", "1/2"]);
    assert_eq!(serde_json::to_value(&r.gamma).unwrap(), "49/2");
    assert_eq!(r.status, "MatchesClosedForm");
    reverify(&SingularitySpec::M(4), Flavor::Es, &r);
}

#[test]
fn integer_values_print_without_denominator() {
    let v = json(&["gamma-search", "--type", "Mk", "--k", "3"]);
    assert_eq!(v["result"]["gamma"], "8");
}

#[test]
fn serialized_witnesses_reverify() {
    let cases: &[(&[&str], SingularitySpec, Flavor)] = &[
        (&["--type", "Ak", "--k", "3", "--alpha", "1/3"], SingularitySpec::A(3), Flavor::Es),
        (&["--type", "Dk", "--k", "7"], SingularitySpec::D(7), Flavor::Es),
        (&["--type", "Ek", "--k", "6", "--alpha", "1"], SingularitySpec::E(6), Flavor::Es),
        (&["--type", "Mk", "--k", "5", "--flavor", "ea"], SingularitySpec::M(5), Flavor::Ea),
    ];
    for (args, spec, flavor) in cases {
        let mut argv = vec!["gamma-search"];
        argv.extend_from_slice(args);
        reverify(spec, *flavor, &gamma_result(&argv));
    }
    let sqh = gamma_result(&["gamma-search", "--type", "sqh", "--weights", "3,13", "--poly", "x^13 - y^3"]);
    let spec = SingularitySpec::sqh(
        gamma_sing::Weights::new(3, 13).unwrap(),
        gamma_sing::poly::parse_polynomial("x^13 - y^3").unwrap(),
    )
    .unwrap();
    reverify(&spec, Flavor::Es, &sqh);
    assert_eq!(serde_json::to_value(&sqh.gamma).unwrap(), "144");
}

#[test]
fn hilbert_of_a_monomial_ideal() {
    let v = json(&["hilbert", "--ideal", "x^3, x^2*y, y^3"]);
    assert_eq!(v["result"]["h0"], serde_json::json!([1, 2, 3, 1]));
    assert_eq!(v["result"]["colength"], 7);
    assert_eq!(v["result"]["min_generators"], 3);
    let ls = json(&["hilbert", "--ideal", "x^2 - y^3, x*y", "--order", "ls"]);
    assert_eq!(ls["input"]["order"], "ls");
    assert_eq!(ls["result"]["colength"], 5);
}

#[test]
fn gamma_of_a_given_ideal() {
    let v = json(&["gamma-ideal", "--type", "Dk", "--k", "10", "--ideal", "x, y^8"]);
    assert_eq!(v["result"]["gamma"], "64");

    // The dimension branch wins: no element is reported.
    let v = json(&["gamma-ideal", "--type", "Mk", "--k", "3", "--ideal", "x, y", "--alpha", "1"]);
    assert_eq!(v["result"]["gamma"], "4");
    assert_eq!(v["result"]["witness_g"], Value::Null);
    assert!(gamma_sing(&["gamma-ideal", "--type", "Mk", "--k", "3", "--ideal", "x, y", "--alpha", "1"])
        .stdout
        .contains("\"witness_g\": null"));
}

#[test]
fn tau_ci_of_m5() {
    let v = json(&["tau-ci", "--type", "Mk", "--k", "5"]);
    assert_eq!(v["result"]["tau_ci"], 9);
}

#[test]
fn documents_round_trip_and_repeat() {
    for args in [
        &["gamma-search", "--type", "Ek", "--k", "7", "--alpha", "1/2", "--seed", "9"][..],
        &["invariants", "--type", "Ak", "--k", "4", "--seed", "3"][..],
        &["hilbert", "--ideal", "x^2 + y^5, y^3"][..],
    ] {
        let first = gamma_sing(args);
        assert_eq!(first.code, 0, "{}", first.stderr);
        let doc = parse(&first.stdout).unwrap();
        assert_eq!(serialize(&doc), first.stdout);
        assert_eq!(gamma_sing(args), first);
    }
}

#[test]
fn table_format() {
    let out = gamma_sing(&["hilbert", "--ideal", "x^3, x^2*y, y^3", "--format", "table"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.lines().any(|l| l.starts_with("result.h0") && l.ends_with("[1, 2, 3, 1]")));
}

#[test]
fn exit_codes() {
    assert_eq!(gamma_sing(&["invariants", "--type", "Dk"]).code, 2);
    assert_eq!(gamma_sing(&["invariants", "--type", "Xk", "--k", "3"]).code, 2);
    assert_eq!(gamma_sing(&["frobnicate"]).code, 2);
    assert_eq!(gamma_sing(&["gamma-search", "--type", "Ak", "--k", "3", "--alpha", "3/2"]).code, 2);
    assert_eq!(gamma_sing(&["gamma-search", "--type", "Ak", "--k", "3", "--alpha", "half"]).code, 2);
    assert_eq!(gamma_sing(&["hilbert", "--ideal", "x^^2"]).code, 2);
    assert_eq!(gamma_sing(&["invariants", "--type", "Ek", "--k", "9"]).code, 2);

    // Well-formed requests that cannot be computed.
    let not_zero_dim = gamma_sing(&["hilbert", "--ideal", "x^2, x*y", "--max-degree", "12"]);
    assert_eq!(not_zero_dim.code, 1);
    assert!(not_zero_dim.stderr.contains("not zero-dimensional"));
    let not_containing = gamma_sing(&["gamma-ideal", "--type", "Ak", "--k", "4", "--ideal", "x^2, y"]);
    assert_eq!(not_containing.code, 1);

    // Bounds exist only for q > p >= 3; the search still certifies a value.
    let v = json(&["gamma-search", "--type", "sqh", "--weights", "2,5", "--poly", "x^5 - y^2"]);
    assert_eq!(v["result"]["closed_form"], Value::Null);
    assert_eq!(v["result"]["status"], "LowerBoundOnly");

    let help = gamma_sing(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("verify-paper"));
}

#[test]
fn binary_matches_library() {
    let args = ["invariants", "--type", "Ek", "--k", "8"];
    let out = Command::new(env!("CARGO_BIN_EXE_gamma-sing")).args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), gamma_sing(&args).stdout);

    let out = Command::new(env!("CARGO_BIN_EXE_gamma-sing")).args(["hilbert"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
