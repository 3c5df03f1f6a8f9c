use std::process::{Command, Output};

use serde_json::Value;

fn fpcheb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpcheb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn forge_happy_path() {
    let o = fpcheb(&["forge", "--p", "10007", "--d", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "forge");
    assert!(v["timestamp"].is_u64());
    let found = v["result"]["found"].as_str().unwrap();
    assert!(found.starts_with("p:10007;"));
    assert_eq!(v["result"]["doublings"], 0);
}

#[test]
fn census_of_x3_plus_4x_over_f7() {
    let o = fpcheb(&[
        "census", "--p", "7", "--base", "p:7;0,4,0,1", "--shape", "add-const", "--interval", "0:7", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let rows: Vec<&str> = csv.lines().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(rows, ["class", "\"(1", "\"(1", "(3)", "ramified"]);
    let counts: Vec<&str> = csv.lines().skip(1).map(|l| l.rsplit(',').nth(3).unwrap()).collect();
    // x^3 + 4x + a, a = 0..6: two ramified, three (1,2), two (3), no (1,1,1)
    assert_eq!(counts, ["0", "3", "2", "2"]);
    assert!(!csv.contains('\r'));
}

#[test]
fn same_config_same_bytes() {
    let args = ["census", "--p", "1009", "--d", "4", "--interval", "100:500", "--no-timestamp"];
    let a = fpcheb(&args);
    let b = fpcheb(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("timestamp").is_none());

    let csv = |w: &str| fpcheb(&["census", "--p", "1009", "--d", "4", "--format", "csv", "--workers", w]).stdout;
    assert_eq!(csv("1"), csv("7"));

    let forge = ["forge", "--p", "100003", "--d", "8", "--no-timestamp"];
    assert_eq!(fpcheb(&forge).stdout, fpcheb(&forge).stdout);
}

#[test]
fn dry_run_resolves_without_computing() {
    let o = fpcheb(&["trinomials", "--p", "100003", "--d", "5", "--i0", "0:5000", "--dry-run"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["dry_run"], true);
    assert!(v.get("result").is_none());
    assert_eq!(v["config"]["resolved"]["i0"], "0:5000");
    assert_eq!(v["config"]["resolved"]["i1"], "0:100003");
}

#[test]
fn every_command_has_a_dry_run() {
    let cases: [&[&str]; 12] = [
        &["forge", "--p", "101", "--d", "3"],
        &["scaling", "--primes", "101,1009,10007", "--d", "3"],
        &["census", "--p", "101", "--d", "3"],
        &["charsum", "--p", "101", "--lambda", "3", "--all-b"],
        &["complete", "--p", "101", "--lambda", "1,2", "--interval", "0:10"],
        &["cubic", "--p", "103", "--shifts", "0,1"],
        &["chowla", "--p", "101", "--d", "3", "--shifts", "0,1"],
        &["divsum", "--p", "101", "--d", "3"],
        &["trinomials", "--p", "101", "--d", "3"],
        &["morse", "--p", "101", "--d", "3"],
        &["badset", "--p", "101", "--d", "3"],
        &["selftest"],
    ];
    for args in cases {
        let mut a = args.to_vec();
        a.push("--dry-run");
        let o = fpcheb(&a);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(json(&o)["dry_run"], true, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(fpcheb(&["bogus"]).status.code(), Some(2));
    assert_eq!(fpcheb(&["census", "--p", "8", "--d", "3"]).status.code(), Some(2));
    assert_eq!(fpcheb(&["census", "--p", "7", "--base", "p:5;1,0,1"]).status.code(), Some(2));
    assert_eq!(fpcheb(&["forge", "--p", "101", "--d", "3", "--interval-factor", "x"]).status.code(), Some(2));
    // x^2 + a over F_11 at a = 0 only: nothing irreducible, no doublings allowed
    let o = fpcheb(&[
        "forge", "--p", "11", "--d", "2", "--b-order", "0", "--b-prefix", "1", "--interval-factor", "1/100",
        "--max-doublings", "0",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invariant violated"));
}

#[test]
fn charsum_spectrum_with_parseval_line() {
    let o = fpcheb(&["charsum", "--p", "499", "--lambda", "3", "--all-b", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "b,re,im,abs");
    assert_eq!(lines.len(), 1 + 499 + 1);
    assert!(lines[500].starts_with("# parseval") && lines[500].ends_with("ok=true"));

    let v = json(&fpcheb(&["charsum", "--p", "499", "--lambda", "3", "--all-b"]));
    assert!(v["result"]["max_over_sqrt_p"].as_f64().unwrap() <= 6.0);
}

#[test]
fn selftest_passes() {
    let o = fpcheb(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with(" passed, 0 failed\n"));
    let v = json(&fpcheb(&["selftest", "--format", "json"]));
    assert_eq!(v["result"]["failed"], 0);
}

#[test]
fn output_goes_to_the_given_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("badset.csv");
    let o = fpcheb(&["badset", "--p", "7", "--base", "p:7;0,0,0,1", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(path).unwrap();
    assert!(csv.starts_with("c\n0\n"));
}
