use std::process::{Command, Output};

use bmac::cli::{sig12, SolutionRecord};
use bmac::kkt::trace_g1;

fn bmac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmac")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const COUNTEREXAMPLE: &str = "2/3,1/4,0.001,5/8";

#[test]
fn solve_emits_the_documented_fields() {
    let o = bmac(&["solve", "--channel", "0.2,0.4,0.5,0.3", "--weights", "1/5,4/5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let keys = ["p1", "p2", "rate1", "rate2", "value", "unit", "location", "corner", "method", "p2_tolerance"];
    let at: Vec<usize> = keys.iter().map(|k| text.find(&format!("\"{k}\":")).unwrap()).collect();
    assert!(at.windows(2).all(|p| p[0] < p[1]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v.as_object().unwrap().len(), keys.len());
    assert_eq!(v["location"], "Interior");
    assert_eq!(v["unit"], "nats");
}

#[test]
fn solution_json_round_trips_byte_identically() {
    for args in [
        ["solve", "--channel", "0.2,0.4,0.5,0.3", "--weights", "1/5,4/5"],
        ["solve", "--channel", COUNTEREXAMPLE, "--weights", "1,1"],
        ["solve", "--channel", "0,0,0.9,0.1", "--weights", "1,2"],
    ] {
        let text = stdout(&bmac(&args));
        let rec: SolutionRecord = serde_json::from_str(&text).unwrap();
        let mut again = serde_json::to_string_pretty(&rec).unwrap();
        again.push('\n');
        assert_eq!(again, text);
    }
}

#[test]
fn bits_are_nats_over_ln2() {
    let base = ["solve", "--channel", COUNTEREXAMPLE, "--weights", "1,1"];
    let nats: SolutionRecord = serde_json::from_str(&stdout(&bmac(&base))).unwrap();
    let mut args = base.to_vec();
    args.extend(["--unit", "bits"]);
    let bits: SolutionRecord = serde_json::from_str(&stdout(&bmac(&args))).unwrap();
    assert_eq!(bits.value, nats.value / std::f64::consts::LN_2);
    assert_eq!(bits.rate1, nats.rate1 / std::f64::consts::LN_2);
    assert_eq!(bits.p1, nats.p1);
}

#[test]
fn counterexample_solves_to_the_boundary() {
    let o = bmac(&["solve", "--channel", COUNTEREXAMPLE, "--weights", "1,1"]);
    let rec: SolutionRecord = serde_json::from_str(&stdout(&o)).unwrap();
    assert_ne!(rec.location, bmac::solver::Location::Interior);
}

#[test]
fn exit_codes() {
    assert_eq!(bmac(&["solve", "--channel", "0.5,0.5,0.5,0.5", "--weights", "1,1"]).status.code(), Some(2));
    assert_eq!(bmac(&["solve", "--channel", "0.1,0.2,0.3", "--weights", "1,1"]).status.code(), Some(1));
    assert_eq!(bmac(&["solve", "--channel", "x,0.2,0.3,0.4", "--weights", "1,1"]).status.code(), Some(1));
    assert_eq!(bmac(&["solve", "--channel", "1.5,0.2,0.3,0.4", "--weights", "1,1"]).status.code(), Some(2));
    assert_eq!(bmac(&["solve", "--channel", "0.1,0.2,0.3,0.4", "--weights", "-1,1"]).status.code(), Some(2));
    assert_eq!(bmac(&["solve", "--channel", "0.1,0.2,0.3,0.4", "--weights", "1,1", "--eps", "0.7"]).status.code(), Some(1));
    assert_eq!(bmac(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bmac(&["solve"]).status.code(), Some(1));
    assert_eq!(bmac(&["--help"]).status.code(), Some(0));
}

#[test]
fn region_csv_layout() {
    let o = bmac(&["region", "--channel", "0.7,0.1,0.35,0.9", "--sweep", "31", "--grid", "512"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r1,r2,w1,w2,p1,p2"));
    let r1: Vec<f64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert!(r1.len() >= 2);
    assert!(r1.windows(2).all(|p| p[0] > p[1]));
    // Every cell is already in 12-significant-digit form.
    for field in text.lines().skip(1).flat_map(|l| l.split(',')).filter(|f| !f.is_empty()) {
        assert_eq!(sig12(field.parse().unwrap()), field);
    }
}

#[test]
fn isosceles_region_is_two_vertices() {
    let o = bmac(&["region", "--channel", "0.3,0.3,0.3,0.8", "--sweep", "21", "--grid", "512"]);
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn single_user_region_is_an_axis_segment() {
    let o = bmac(&["region", "--channel", "1,1,0,0", "--sweep", "11", "--grid", "256"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("0.69314718056,0,"));
    assert!(rows[1].starts_with("0,0,"));
}

#[test]
fn kkt_lists_three_points_for_the_counterexample() {
    let o = bmac(&["kkt", "--channel", COUNTEREXAMPLE, "--weights", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let pts = v.as_array().unwrap();
    assert_eq!(pts.len(), 3);
    assert!(pts.iter().any(|p| p["kind"] == "Saddle" && p["on_boundary"] == false));
    assert!(pts.iter().all(|p| p["residual"].as_f64().unwrap() <= 1e-8));
}

#[test]
fn kkt_rejects_non_differentiable_and_degenerate_channels() {
    let o = bmac(&["kkt", "--channel", "0,0.25,0.001,0.625", "--weights", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("differentiable"));
    let o = bmac(&["kkt", "--channel", "0.5,0.5,0.5,0.5", "--weights", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn g1_csv_matches_the_angular_trace() {
    let o = bmac(&["g1", "--channel", COUNTEREXAMPLE, "--grid", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let ch: bmac::Channel = COUNTEREXAMPLE.parse().unwrap();
    let mut want = String::from("r1,r2\n");
    for r in trace_g1(&ch, 100) {
        want.push_str(&format!("{},{}\n", sig12(r.r1), sig12(r.r2)));
    }
    assert_eq!(stdout(&o), want);
}

#[test]
fn output_flag_writes_a_file_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sol.json");
    let p = path.to_str().unwrap();
    let args = ["solve", "--channel", COUNTEREXAMPLE, "--weights", "1,2", "-o", p];
    assert_eq!(bmac(&args).status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(bmac(&args).status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), first);
    assert!(!first.is_empty());
}

#[test]
fn verify_with_missing_fixture_file_exits_1() {
    let o = bmac(&["verify", "--fixtures", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_with_malformed_fixture_file_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fx.json");
    std::fs::write(&path, "{\"unknown\": 1}").unwrap();
    let o = bmac(&["verify", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
