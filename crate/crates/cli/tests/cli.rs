use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_critgap")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

#[test]
fn gapcheck_example() {
    let doc = json(&["gapcheck", "--tuple", "1", "t"]);
    assert_eq!(doc["command"], "gapcheck");
    let r = &doc["results"][0];
    assert_eq!(r["lhs"], "2");
    assert_eq!(r["h_crit"], "1");
    assert_eq!(r["deg_lambda"], 1);
    assert_eq!(r["holds"], true);
    assert_eq!(doc["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn range_family_example() {
    let doc = json(&["range-family", "-d", "4", "-x", "5/2"]);
    let r = &doc["results"][0];
    assert_eq!(strings(&r["tuple"]), ["t^2", "t^2", "t"]);
    assert_eq!(r["ratio"], "5/2");
    assert_eq!(r["realized"], true);
}

#[test]
fn sharp_example_uses_s() {
    let doc = json(&["sharp", "-d", "3"]);
    let r = &doc["results"][0];
    assert_eq!(r["h_crit"], "2");
    assert_eq!(r["parameter"], "s");
    assert_eq!(r["stated_h_crit"], 2);
    assert_eq!(r["stated_deg_lambda"], 3);
    assert_eq!(r["agrees_oracle"], true);
    assert!(r["multiplier"].as_str().unwrap().contains('s'));
    assert!(r["note"].as_str().unwrap().contains('s'));
}

#[test]
fn hcrit_from_tuple_and_poly_agree() {
    let doc = json(&["hcrit", "--tuple", "t", "1"]);
    let r = &doc["results"][0];
    assert_eq!(r["h_crit"], "1");
    assert_eq!(r["hhat_crit"]["value"], "4/3");
    assert_eq!(r["agreement"], true);
    let coeffs: Vec<String> = strings(&r["map"]).iter().map(|s| s.to_string()).collect();
    let mut args = vec!["hcrit", "--poly"];
    args.extend(coeffs.iter().map(String::as_str));
    let doc = json(&args);
    assert_eq!(doc["results"][0]["h_crit"], "1");
    assert_eq!(doc["results"][0]["h_crit_escape"]["certified"], true);
}

#[test]
fn green_with_negative_coefficients() {
    // z^3/3 - (t+1)/2 z^2 + t z from the point 1 at infinity.
    let doc = json(&["green", "--poly", "0", "t", "-(t+1)/2", "1/3", "--point", "1", "--place", "inf"]);
    let r = &doc["results"][0];
    assert_eq!(r["value"], "1/3");
    assert_eq!(r["certified"], true);
    assert_eq!(r["threshold"], "1");
}

#[test]
fn multiplier_and_sset() {
    let doc = json(&["multiplier", "--tuple", "1", "t"]);
    assert_eq!(doc["results"][0]["multiplier"], "t");
    let doc = json(&["sset", "--tuple", "1", "t"]);
    assert_eq!(strings(&doc["results"][0]["s_set"]), ["inf"]);
}

#[test]
fn height_of_tuple() {
    let doc = json(&["height", "-t", "1/t"]);
    assert_eq!(doc["results"][0]["height"], "2");
}

#[test]
fn pcf_levels() {
    let doc = json(&["pcf", "-d", "3", "-n", "2", "--numeric"]);
    let levels = doc["results"].as_array().unwrap();
    assert_eq!(levels.len(), 2);
    assert_eq!(levels[1]["degree"], 9);
    assert_eq!(levels[1]["new_factor"], "2*t^2 + 3");
    assert_eq!(levels[1]["zero_multiplicity"], 7);
    assert_eq!(levels[1]["numeric_precision"]["significant_digits"], 17);
    let roots = levels[1]["numeric_roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    for r in roots {
        assert!(r["residual"].as_f64().unwrap() < 1e-8);
        let part = |k: &str| r[k].as_str().unwrap().parse::<f64>().unwrap();
        assert!(part("re").abs() < 1e-9);
        assert!((part("im").abs() - 1.5f64.sqrt()).abs() < 1e-9);
    }
}

#[test]
fn corpus_is_deterministic_and_exact() {
    let args = ["corpus", "--count", "6", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["config"]["seed"], 11);
    let results = doc["results"].as_array().unwrap();
    assert_eq!(results.len(), 6);
    for (i, r) in results.iter().enumerate() {
        assert_eq!(r["index"], i);
        assert!(r["h_crit"].is_string());
        assert_eq!(r["agreement"], true);
    }
    let other = run(&["corpus", "--count", "6", "--seed", "12"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn tsv_output() {
    let out = run(&["ratio", "--tuple", "1", "t", "--tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].split('\t').any(|h| h == "place.place"));
    assert_eq!(lines.len(), 3);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["gapcheck", "--tuple", "1+"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--precision-start", "64", "--precision-cap", "32", "sset", "--tuple", "t"]).status.code(), Some(2));
    assert_eq!(run(&["green", "--poly", "0", "1", "--point", "1", "--place", "t^2-1"]).status.code(), Some(2));
}

#[test]
fn computation_errors_exit_1() {
    let out = run(&["sharp", "-d", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["failures"][0]["check"], "error");
    assert_eq!(run(&["range-family", "-d", "3", "-x", "7"]).status.code(), Some(1));
    assert_eq!(run(&["pcf", "-d", "3", "-n", "3", "--iterate-cap", "2"]).status.code(), Some(1));
    assert_eq!(run(&["gapcheck", "--tuple", "0", "t"]).status.code(), Some(1));
}
