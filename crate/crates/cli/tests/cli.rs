use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qinv")).args(args).output().expect("binary runs")
}

fn example(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "examples", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn catalog_lists_knots_and_presentations() {
    let o = qinv(&["catalog"]);
    assert!(o.status.success());
    let v = json_out(&o);
    let knots: Vec<&str> = v["knots"].as_array().unwrap().iter().map(|k| k["name"].as_str().unwrap()).collect();
    assert!(knots.contains(&"fig8") && knots.contains(&"whitehead"));
    let names: Vec<&str> = v["presentations"].as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"fig8_plus2") && names.contains(&"whitehead"));
}

#[test]
fn tau_is_deterministic() {
    let args = ["tau", "--builtin", "fig8_plus2", "--order", "6", "--flavor", "su2"];
    let a = qinv(&args);
    let b = qinv(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn file_and_builtin_agree() {
    let file = example("fig8_plus2.json");
    let a = qinv(&["tau", "--presentation", &file, "--order", "5", "--flavor", "so3"]);
    let b = qinv(&["tau", "--builtin", "fig8_plus2", "--order", "5", "--flavor", "so3"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_framing_reports_pointer() {
    let o = qinv(&["tau", "--presentation", &example("invalid/bad_framing.json"), "--order", "5", "--flavor", "so3"]);
    assert_eq!(o.status.code(), Some(1));
    let msg = json_out(&o)["error"].as_str().unwrap().to_string();
    assert!(msg.contains("/components/0/framing"), "{msg}");
}

#[test]
fn bad_order_is_rejected() {
    let o = qinv(&["unified", "--presentation", &example("invalid/bad_order.json"), "--truncation", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json_out(&o)["error"].as_str().unwrap().contains("/components"));
}

#[test]
fn missing_source_is_a_usage_error() {
    assert_eq!(qinv(&["tau", "--order", "5", "--flavor", "so3"]).status.code(), Some(2));
    let both = qinv(&["tau", "--builtin", "rp3", "--presentation", "x.json", "--order", "5", "--flavor", "so3"]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn spin_without_sector_fails() {
    let o = qinv(&["tau", "--builtin", "rp3", "--order", "4", "--flavor", "spin"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unified_series_from_file() {
    let o = qinv(&["unified", "--presentation", &example("whitehead_sum_rp3.json"), "--truncation", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let v = json_out(&o);
    assert!(v.to_string().contains("den_factors"));
}

#[test]
fn evaluate_matches_normalized_state_sum() {
    for (src, order, flavor) in [("poincare.json", "5", "so3"), ("fig8_plus2.json", "4", "su2")] {
        let file = example(src);
        let e = qinv(&["evaluate", "--presentation", &file, "--order", order]);
        let t = qinv(&["tau", "--presentation", &file, "--order", order, "--flavor", flavor, "--prime"]);
        assert!(e.status.success() && t.status.success());
        assert_eq!(json_out(&e), json_out(&t), "{src}");
    }
}

#[test]
fn refined_evaluation_matches_shifted_sector() {
    // at r = 4 the shift is χ = 1, so the series for c = 1 lands on sector 0
    let e = qinv(&["evaluate", "--builtin", "fig8_plus2", "--order", "4", "--refine", "spin", "--sector", "1"]);
    let t = qinv(&["tau", "--builtin", "fig8_plus2", "--order", "4", "--flavor", "spin", "--sector", "0", "--prime"]);
    assert!(e.status.success(), "{}", String::from_utf8_lossy(&e.stdout));
    assert!(t.status.success(), "{}", String::from_utf8_lossy(&t.stdout));
    assert_eq!(json_out(&e), json_out(&t));
}

#[test]
fn ohtsuki_of_poincare_is_integral() {
    let o = qinv(&["ohtsuki", "--builtin", "poincare", "--degree", "4"]);
    assert!(o.status.success());
    assert_eq!(json_out(&o)["integral"], Value::Bool(true));
}

#[test]
fn verify_small_suite() {
    let o = qinv(&["verify", "--suite", "lemmas", "--max-k", "4", "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(json_out(&o)["failed"], 0);
    assert_eq!(qinv(&["verify", "--suite", "nonsense"]).status.code(), Some(1));
}
