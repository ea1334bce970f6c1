mod common;

use std::f64::consts::FRAC_PI_2;
use std::process::Command;

use serde_json::Value;

use common::{total_laplacian_by_definition, Oracle};
use pairwalk::cli::{run_cli, run_cli_with_env, CliOutcome};
use pairwalk::graph::{cocktail_party, complete_graph};
use pairwalk::report::{sha256_hex, AnalysisReport};

fn run(args: &[&str]) -> CliOutcome {
    run_cli(std::iter::once("pairwalk").chain(args.iter().copied()))
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("stdout is JSON")
}

fn result(args: &[&str]) -> Value {
    ok_json(args)["result"].clone()
}

#[test]
fn build_reports_the_family() {
    let r = result(&["build", "--family", "petersen"]);
    assert_eq!(r["vertices"], 10);
    assert_eq!(r["edges"], 15);
    assert_eq!(r["regular_degree"], 3);
    assert_eq!(r["bipartite"], false);

    let r = result(&["build", "--family", "total", "--base", "hypercube", "--params", "d=3"]);
    assert_eq!(r["vertices"], 20);
    assert_eq!(r["regular_degree"], 6);
}

#[test]
fn build_from_an_edge_list_records_its_hash() {
    let text = "4 4\n0 1\n1 2\n2 3\n0 3\n";
    let path = std::env::temp_dir().join(format!("pairwalk-c4-{}.txt", std::process::id()));
    std::fs::write(&path, text).unwrap();
    let report = ok_json(&["build", "--graph", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(report["graph"]["kind"], "file");
    assert_eq!(report["graph"]["sha256"], sha256_hex(text.as_bytes()));
    assert_eq!(report["result"]["bipartite"], true);
}

#[test]
fn total_spectrum_matches_the_oracle() {
    let r = result(&["spectra", "--family", "total", "--base", "complete", "--params", "n=4"]);
    let oracle = Oracle::new(&total_laplacian_by_definition(&complete_graph(4).unwrap()));
    let values = r["eigenvalues"].as_array().unwrap();
    assert_eq!(values.len(), oracle.values.len());
    for (entry, (v, m)) in values.iter().zip(oracle.values.iter().zip(&oracle.multiplicities)) {
        assert!((entry["numeric"].as_f64().unwrap() - v).abs() < 1e-8);
        assert_eq!(entry["multiplicity"].as_u64().unwrap() as usize, *m);
        assert!(entry["exact"].is_string());
    }
}

#[test]
fn numeric_spectrum_of_a_non_integral_graph() {
    let r = result(&["spectra", "--family", "cycle", "--params", "n=5", "--numeric"]);
    let values: Vec<f64> = r["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["numeric"].as_f64().unwrap())
        .collect();
    let expected: Vec<f64> = [0.0, 2.0 - 2.0 * (0.4 * std::f64::consts::PI).cos(), 2.0 - 2.0 * (0.8 * std::f64::consts::PI).cos()]
        .to_vec();
    assert_eq!(values.len(), 3);
    for (v, e) in values.iter().zip(&expected) {
        assert!((v - e).abs() < 1e-10);
    }
}

#[test]
fn support_and_cospectrality() {
    let r = result(&["support", "--family", "cocktail", "--params", "m=6", "--pair", "0,1", "--partner", "6,7"]);
    assert_eq!(r["support"], serde_json::json!([10.0, 12.0]));
    assert_eq!(r["strongly_cospectral"], true);

    let r = result(&["cospectral", "--family", "cocktail", "--params", "m=6", "--pair", "0,1", "--partner", "6,7"]);
    assert_eq!(r["strongly_cospectral"], true);
    assert_eq!(r["plus_set"], serde_json::json!([12.0]));
    assert_eq!(r["minus_set"], serde_json::json!([10.0]));
}

#[test]
fn pair_subcommands_mirror_the_top_level_ones() {
    let base = ["--family", "cocktail", "--params", "m=3", "--pair", "0,1", "--partner", "3,4"];
    for cmd in ["support", "cospectral"] {
        let top: Vec<&str> = std::iter::once(cmd).chain(base).collect();
        let nested: Vec<&str> = ["pair", cmd].into_iter().chain(base).collect();
        assert_eq!(result(&top), result(&nested), "{cmd}");
    }
    let mut top = vec!["amplitude"];
    top.extend(base);
    top.extend(["--time", "0.7"]);
    let mut nested = vec!["pair", "amplitude"];
    nested.extend(base);
    nested.extend(["--time", "0.7"]);
    assert_eq!(result(&top), result(&nested));
}

#[test]
fn amplitude_at_a_time_matches_the_oracle() {
    let r = result(&[
        "amplitude", "--family", "cocktail", "--params", "m=6", "--pair", "0,1", "--partner", "6,7", "--time", "1.2",
    ]);
    let oracle = Oracle::new(&common::laplacian_by_definition(&cocktail_party(6).unwrap()));
    let f = r["amplitude"]["fidelity"].as_f64().unwrap();
    assert!((f - oracle.pair_fidelity(0, 1, 6, 7, 1.2)).abs() < 1e-10);
}

#[test]
fn closed_form_amplitude_agrees_with_the_full_total_graph() {
    let args = ["amplitude", "--family", "total", "--base", "petersen", "--pair", "0,4", "--partner", "2,9", "--time", "3.1"];
    let direct = result(&args);
    let mut closed_args = args.to_vec();
    closed_args.push("--closed-form");
    let closed = result(&closed_args);
    assert_eq!(closed["closed_form"], true);
    for key in ["re", "im", "fidelity"] {
        let a = direct["amplitude"][key].as_f64().unwrap();
        let b = closed["amplitude"][key].as_f64().unwrap();
        assert!((a - b).abs() < 1e-9, "{key}: {a} vs {b}");
    }
}

#[test]
fn sweep_prints_csv() {
    let out = run(&[
        "amplitude", "--family", "cocktail", "--params", "m=6", "--pair", "0,1", "--partner", "6,7", "--sweep",
        "0:1.5707963267948966:5",
    ]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "time,fidelity");
    assert_eq!(lines.len(), 6);
    let last: f64 = lines[5].split(',').nth(1).unwrap().parse().unwrap();
    assert!((last - 1.0).abs() < 1e-9);
}

#[test]
fn certify_and_scan() {
    let r = result(&["certify-pst", "--family", "cocktail", "--params", "m=6", "--pair", "0,1", "--partner", "6,7"]);
    assert_eq!(r["verdict"], "yes");
    assert_eq!(r["g"], 2);
    assert_eq!(r["delta"], 1);
    assert!((r["t0"].as_f64().unwrap() - FRAC_PI_2).abs() < 1e-12);

    let r = result(&["certify-pst", "--family", "complete", "--params", "n=4", "--pair", "0,1", "--partner", "2,3"]);
    assert_eq!(r["verdict"], "no");
    assert!(r["violation"].is_object());

    let r = result(&["scan-pst", "--family", "cocktail", "--params", "m=3"]);
    assert_eq!(r["pair_states"], 15);
    assert_eq!(r["comparisons"], 105);
    let certs = r["certificates"].as_array().unwrap();
    assert!(!certs.is_empty());
    assert!(certs.iter().all(|c| c["verdict"] == "yes"));
}

#[test]
fn pgst_search_reaches_the_target() {
    let r = result(&[
        "search-pgst", "--family", "total", "--base", "cocktail", "--params", "m=6", "--pair", "0,1", "--partner", "6,7",
        "--epsilon", "0.05", "--ell-max", "1000",
    ]);
    assert_eq!(r["reached_target"], true);
    assert!(r["best_fidelity"].as_f64().unwrap() >= 0.95);
    assert_eq!(r["hypothesis_check"]["holds"], true);
}

#[test]
fn verify_theorem_runs_and_lists_cases() {
    let r = result(&["verify-theorem", "--case", "thm-tkn", "--n", "4"]);
    assert_eq!(r["status"], "pass");
    let list = result(&["verify-theorem", "--list"]);
    assert_eq!(list.as_array().unwrap().len(), pairwalk::theorem::CASES.len());
}

#[test]
fn domain_errors_exit_with_one_and_a_json_error() {
    let cases: [(&[&str], &str); 3] = [
        (
            &["certify-pst", "--family", "cycle", "--params", "n=5", "--pair", "0,1", "--partner", "2,3"],
            "certification-unavailable",
        ),
        (&["scan-pst", "--family", "hypercube", "--params", "d=6"], "too-large"),
        (&["verify-theorem", "--case", "nope"], "invalid-parameter"),
    ];
    for (args, kind) in cases {
        let out = run(args);
        assert_eq!(out.code, 1, "{args:?}");
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"]["kind"], kind);
        assert!(out.stderr.starts_with("error:"));
    }
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["build", "--family", "blah"][..],
        &["build", "--family", "complete", "--params", "q=4"],
        &["frobnicate"],
        &["amplitude", "--family", "petersen"],
    ] {
        assert_eq!(run(args).code, 2, "{args:?}");
    }
    let support = ["pairwalk", "support", "--family", "petersen", "--pair", "0,1"];
    assert_eq!(run_cli_with_env(support, Some("abc".into())).code, 2);
    // Commands without a tolerance never read the variable.
    assert_eq!(run_cli_with_env(["pairwalk", "build", "--family", "petersen"], Some("abc".into())).code, 0);
}

#[test]
fn tolerance_precedence() {
    let args = ["pairwalk", "support", "--family", "petersen", "--pair", "0,1"];
    let support_tol = |out: CliOutcome| {
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        v["tolerances"]["support"].as_f64().unwrap()
    };
    let default = support_tol(run_cli_with_env(args, None));
    assert!((default - 1e-7 * 2f64.sqrt()).abs() < 1e-20);
    assert_eq!(support_tol(run_cli_with_env(args, Some("1e-5".into()))), 1e-5);
    let mut flagged = args.to_vec();
    flagged.extend(["--tol", "1e-4"]);
    assert_eq!(support_tol(run_cli_with_env(flagged, Some("1e-5".into()))), 1e-4);
}

#[test]
fn reports_round_trip_byte_for_byte() {
    for args in [
        &["spectra", "--family", "total", "--base", "hypercube", "--params", "d=3"][..],
        &["certify-pst", "--family", "hypercube", "--params", "d=3", "--pair", "0,1", "--partner", "7,6"],
        &["amplitude", "--family", "petersen", "--pair", "0,1", "--partner", "2,3", "--time", "0.3"],
    ] {
        let out = run(args);
        assert_eq!(out.code, 0);
        let text = out.stdout.trim_end();
        let report = AnalysisReport::from_json(text).unwrap();
        assert_eq!(report.to_json(), text, "{args:?}");
    }
}

#[test]
fn timing_is_opt_in() {
    let plain = ok_json(&["build", "--family", "petersen"]);
    assert!(plain.get("wall_time_seconds").is_none());
    let timed = ok_json(&["build", "--family", "petersen", "--timing"]);
    assert!(timed["wall_time_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pairwalk");
    let ok = Command::new(bin).args(["build", "--family", "petersen"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let domain = Command::new(bin)
        .args(["certify-pst", "--family", "cycle", "--params", "n=5", "--pair", "0,1", "--partner", "2,3"])
        .output()
        .unwrap();
    assert_eq!(domain.status.code(), Some(1));
    let usage = Command::new(bin).args(["build", "--family", "blah"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let env = Command::new(bin)
        .env("PAIRWALK_TOL", "-3")
        .args(["support", "--family", "petersen", "--pair", "0,1"])
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
}
