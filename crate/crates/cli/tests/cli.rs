use std::process::{Command, Output};

use forge_core::selftest::SelftestReport;
use forge_core::{Certificate, CheckStatus, Verdict};
use serde_json::Value;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forge"))
        .args(args)
        .env_remove("FORGE_SEED")
        .output()
        .expect("run forge")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = forge(&all);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", stdout(&o)))
}

#[test]
fn lucas_seven() {
    let o = forge(&["lucas", "--i", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "29");
    assert_eq!(stdout(&forge(&["lucas", "--i", "-5"])).trim(), "-11");
}

#[test]
fn admissible_theorem_flag() {
    let o = forge(&["admissible", "--theorem", "2", "--p", "5", "--k", "1", "--j", "7"]);
    assert!(o.status.success());
    let stated = json(&["admissible", "--theorem", "3", "--p", "5", "--j", "36", "--witness"]);
    assert_eq!(stated["admissible"], true);
    assert!(stated["witness"].is_null());
    let refined = json(&["admissible", "--theorem", "3", "--refined", "--p", "5", "--j", "36"]);
    assert_eq!(refined["admissible"], false);
}

#[test]
fn enumerate_t9() {
    let o = forge(&["family", "enumerate", "T9", "--from", "0", "--to", "49"]);
    assert_eq!(stdout(&o).trim(), "0 5 8 17 20 25 49");
    let v = json(&["family", "enumerate", "T9", "--from", "0", "--to", "49"]);
    assert_eq!(v["t"], serde_json::json!([0, 5, 8, 17, 20, 25, 49]));
}

#[test]
fn certify_t4_at_one() {
    let dir = std::env::temp_dir().join(format!("forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t4.json");
    let o = forge(&["certify", "T4", "--t", "1", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let cert: Certificate = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cert.verdict, Verdict::Pass);
    assert_eq!(cert.newton().unwrap().start, (-9).into());
    let written: Certificate = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, cert);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn certify_exit_codes() {
    assert_eq!(forge(&["certify", "D5_235", "--t", "0"]).status.code(), Some(2));
    assert_eq!(forge(&["certify", "T4", "--t", "-22"]).status.code(), Some(3));
    let o = forge(&["certify", "T4", "--t", "3", "--json"]);
    let cert: Certificate = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cert.check("irreducibility").unwrap().status, CheckStatus::Skip);
}

#[test]
fn seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_forge"))
        .args(["certify", "T4", "--t", "1", "--json"])
        .env("FORGE_SEED", "17")
        .output()
        .unwrap();
    let cert: Certificate = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cert.seed, 17);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(forge(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(forge(&["family", "show", "T99"]).status.code(), Some(64));
    assert_eq!(forge(&["admissible", "--j", "3", "--p", "9"]).status.code(), Some(64));
    assert_eq!(forge(&["scan", "--poly", "[1, 2"]).status.code(), Some(64));
    assert_eq!(forge(&["family", "lucas", "T4"]).status.code(), Some(64));
    assert_eq!(forge(&["admissible", "--theorem", "4", "--j", "1", "--p", "5"]).status.code(), Some(64));
    assert_eq!(forge(&["admissible", "--theorem", "2", "--lucas", "--j", "1", "--p", "5"]).status.code(), Some(64));
    assert_eq!(forge(&["--help"]).status.code(), Some(0));
}

#[test]
fn every_command_emits_json() {
    let cases: &[&[&str]] = &[
        &["construct-pn", "--example", "sqrt-47"],
        &["dual-orbit", "--example", "sqrt-235"],
        &["cheb", "--n", "5"],
        &["cheb", "--fixed-points", "--p", "3", "--k", "3"],
        &["lucas", "--i", "35"],
        &["lucas", "--i", "4", "--poly"],
        &["admissible", "--j", "2", "--p", "5", "--witness"],
        &["admissible", "--j", "3", "--p", "7", "--lucas"],
        &["admissible", "--theorem", "3", "--p", "5", "--k", "1", "--j", "136", "--refined"],
        &["family", "list"],
        &["family", "show", "T8"],
        &["family", "specialize", "T15", "--t", "0"],
        &["family", "lucas", "T5"],
        &["scan", "--family", "T4", "--t", "1", "--bound", "2000"],
        &["pgl-pair"],
    ];
    for args in cases {
        let v = json(args);
        assert!(v.is_object() || v.is_array(), "{args:?}");
    }
    let v = json(&["construct-pn", "--example", "sqrt-47"]);
    assert_eq!(v["target_match"], true);
    assert_eq!(v["branches_tried"], 625);
    let v = json(&["construct-pn", "--example", "sqrt-235"]);
    assert_eq!(v["target_match"], false);
    assert_eq!(v["poly"], serde_json::json!(["167504", "5860", "-2605", "-10", "0", "1"]));
    assert_eq!(json(&["lucas", "--i", "35"])["value"], "20633239");
}

#[test]
fn orbit_round_trip_through_files() {
    let dir = std::env::temp_dir().join(format!("forge-orbit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let orbit = json(&["dual-orbit", "--example", "sqrt-47"])["orbit"].clone();
    let path = dir.join("orbit.json");
    std::fs::write(&path, orbit.to_string()).unwrap();
    let target = dir.join("target.json");
    std::fs::write(&target, "[443629, 5860, -2605, -10, 0, 1]").unwrap();
    let v = json(&[
        "construct-pn",
        "--orbit",
        path.to_str().unwrap(),
        "--search-branches",
        "--target",
        target.to_str().unwrap(),
    ]);
    assert_eq!(v["target_match"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_is_deterministic() {
    let a = forge(&["selftest"]);
    let b = forge(&["selftest", "--seed", "0"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let report: SelftestReport = serde_json::from_value(json(&["selftest"])).unwrap();
    assert!(report.ok());
    assert_eq!(report.seed, 0);
}
