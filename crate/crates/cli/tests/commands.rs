use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn qdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdist")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ok(args: &[&str]) -> String {
    let o = qdist(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--output", "json"]);
    serde_json::from_str(&ok(&a)).expect("json report")
}

fn value(report: &Value, name: &str) -> f64 {
    report["values"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["name"] == name)
        .unwrap_or_else(|| panic!("no value {name} in {report}"))["value"]
        .as_f64()
        .unwrap()
}

fn without_wall_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time_s");
    v
}

#[test]
fn holevo_of_basis_states_is_one_bit() {
    assert!(ok(&["holevo", &fixture("states_basis.json")]).starts_with("holevo: 1.000000\n"));
    assert!(ok(&["holevo", &fixture("states_identical.json")]).starts_with("holevo: 0.000000\n"));
}

#[test]
fn fidelity_examples() {
    assert!(ok(&["fidelity", &fixture("states_identical.json")]).starts_with("fidelity: 1.000000\n"));
    assert!(ok(&["fidelity", &fixture("states_bhattacharyya.json")]).starts_with("fidelity: 0.948683\n"));
    let two = ok(&["fidelity", &fixture("states_basis.json"), &fixture("states_basis.json")]);
    assert!(two.starts_with("fidelity: 1.000000\n"), "{two}");
}

#[test]
fn entropy_lists_each_state() {
    let out = ok(&["entropy", &fixture("states_bhattacharyya.json")]);
    assert!(out.contains("entropy[0]: 1.000000\n"));
    assert!(out.contains("entropy[1]: 0.721928\n"));
}

#[test]
fn dist_ops_on_pauli_reaches_two_bits() {
    let r = json(&["dist-ops", &fixture("pauli.json"), "--restarts", "16"]);
    assert!(value(&r, "dist_ops") >= 1.999);
    assert_eq!(r["bound_kind"], "lower");
    assert_eq!(r["probe"].as_array().unwrap().len(), 4);
    assert_eq!(r["diagnostics"]["restarts_run"], 16);
}

#[test]
fn bell_probe_on_pauli() {
    let r = json(&["holevo-at", &fixture("pauli.json"), "--probe", &fixture("bell_probe.json")]);
    assert!((value(&r, "holevo_at") - 2.0).abs() < 1e-10);
}

#[test]
fn dist_ops_and_su2_on_ex3() {
    let r = json(&["dist-ops", &fixture("ex3_u.json")]);
    assert!((value(&r, "dist_ops") - 1.138).abs() < 5e-3);
    let s = json(&["su2", &fixture("ex3_v.json")]);
    assert!((value(&s, "su2") - 1.118).abs() < 5e-3);
    assert_eq!(s["bound_kind"], "exact");
    assert_eq!(s["diagnostics"]["pairwise_overlaps"].as_array().unwrap().len(), 3);
}

#[test]
fn fid_ops_on_identical_channels_is_one() {
    let out = ok(&["fid-ops", &fixture("identical_channels.json"), "--restarts", "8"]);
    assert!(out.starts_with("fid_ops: 1.000000\nbound: upper\n"), "{out}");
}

#[test]
fn measure_reprepare_pair_stays_confusable() {
    let one = json(&["fid-ops", &fixture("eb_measure_reprepare.json"), "--restarts", "16"]);
    assert!((value(&one, "fid_ops") - 0.5f64.sqrt()).abs() < 1e-4);
    let two = json(&["eb-check", &fixture("eb_measure_reprepare.json"), "--copies", "2", "--restarts", "8"]);
    assert_eq!(two["diagnostics"]["not_perfectly_distinguishable"], true);
}

#[test]
fn capacity_reports_a_prior() {
    let r = json(&["capacity", &fixture("noisy_pair.json"), "--restarts", "8"]);
    let c = value(&r, "capacity");
    assert!(c > 0.0 && c <= 1.0 + 1e-9);
    let prior: Vec<f64> = r["diagnostics"]["prior"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(prior.len(), 2);
    assert!((prior.iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn su2_rejects_determinant_minus_one() {
    let o = qdist(&["su2", &fixture("pair_sign.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("SU(2)"), "{}", stderr(&o));
}

#[test]
fn pair_and_copy_counts() {
    assert!(ok(&["pair", &fixture("pair_phase_quarter.json")]).starts_with("min_overlap: 0.707107\n"));
    assert!(ok(&["min-copies", &fixture("pair_phase_quarter.json")]).starts_with("copies: 2\n"));
    assert!(ok(&["min-copies", &fixture("pair_sign.json")]).starts_with("copies: 1\n"));
    let never = ok(&["min-copies", &fixture("identical_channels.json")]);
    assert!(never.contains("copies: never"), "{never}");
    let bound = json(&["copies-bound", &fixture("copies_three.json")]);
    assert_eq!(bound["bound_kind"], "upper");
    assert!(value(&bound, "copies_bound") >= 2.0);
}

#[test]
fn paradox_verification_line() {
    let out = ok(&["paradox", "--verify-ex3", "--trials", "20"]);
    assert!(out.contains("ex3: PARADOX CONFIRMED\n"), "{out}");
}

#[test]
fn paradox_is_deterministic_per_seed() {
    let args = ["paradox", "--trials", "200", "--seed", "5"];
    assert_eq!(without_wall_time(json(&args)), without_wall_time(json(&args)));
}

#[test]
fn order_search_with_zero_trials_is_empty() {
    let r = json(&["order-search", "--trials", "0"]);
    assert_eq!(r["diagnostics"]["witness_list"], Value::Array(vec![]));
    assert_eq!(value(&r, "witnesses"), 0.0);
}

#[test]
fn order_search_witnesses_disagree() {
    let r = json(&["order-search", "--trials", "100", "--seed", "2"]);
    for w in r["diagnostics"]["witness_list"].as_array().unwrap() {
        let df = w["fidelity_first"].as_f64().unwrap() - w["fidelity_second"].as_f64().unwrap();
        let dh = w["holevo_first"].as_f64().unwrap() - w["holevo_second"].as_f64().unwrap();
        // Lower fidelity should mean more information; a witness breaks that.
        assert!(df * dh > 0.0, "{w}");
    }
}

#[test]
fn search_reports_are_byte_identical_minus_wall_time() {
    let args = ["dist-ops", &fixture("ex3_u.json"), "--seed", "11", "--restarts", "8"];
    let a = without_wall_time(json(&args));
    let b = without_wall_time(json(&args));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let c = without_wall_time(json(&["dist-ops", &fixture("ex3_u.json"), "--seed", "12", "--restarts", "8"]));
    assert_ne!(a["inputs_digest"], Value::Null);
    assert_eq!(a["inputs_digest"], c["inputs_digest"]);
    assert_ne!(a["seed"], c["seed"]);
}

#[test]
fn verify_majorization() {
    let out = ok(&["verify", "--suite", "majorization", "--trials", "500"]);
    assert!(out.contains("suite majorization: PASS"), "{out}");
}

#[test]
fn verify_prop8() {
    let r = json(&["verify", "--suite", "prop8", "--trials", "100"]);
    assert_eq!(value(&r, "failures"), 0.0);
    let checks = r["diagnostics"]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "bell-not-better" && c["worst"].is_number()));
}

#[test]
fn verify_holevo_mono() {
    let out = ok(&["verify", "--suite", "holevo-mono", "--trials", "300"]);
    assert!(out.contains("suite holevo-mono: PASS"), "{out}");
}

#[test]
fn unknown_suite_exits_two() {
    let o = qdist(&["verify", "--suite", "prop5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("prop5"));
}

#[test]
fn invalid_fixture_exits_two_with_residual() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("not_unitary.json");
    std::fs::write(
        &path,
        r#"{"version": "qdist-fixture/1", "dimension": 2, "operations": [
            {"type": "unitary", "weight": 1.0, "matrix": [[[1, 0], [0, 0]], [[0, 0], [1.01, 0]]]}]}"#,
    )
    .unwrap();
    let o = qdist(&["dist-ops", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("e-") || err.contains("e0"), "{err}");

    let missing = qdist(&["holevo", dir.join("absent.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_tol = qdist(&["dist-ops", &fixture("pauli.json"), "--tol", "-1"]);
    assert_eq!(bad_tol.status.code(), Some(2));
}

#[test]
fn bundled_fixtures_validate() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures"].iter().collect();
    let mut files: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .map(|p| p.to_string_lossy().into_owned())
        .collect();
    files.sort();
    for required in ["ex3_u.json", "ex3_v.json", "pauli.json", "bell_probe.json", "eb_measure_reprepare.json"] {
        assert!(files.iter().any(|f| f.ends_with(required)), "missing {required}");
    }
    let mut args = vec!["validate"];
    args.extend(files.iter().map(String::as_str));
    let out = ok(&args);
    assert_eq!(out.matches(": ok").count(), files.len());
}
