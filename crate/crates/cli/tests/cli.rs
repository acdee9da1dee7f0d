use serde_json::Value;
use std::process::{Command, Output};

fn mac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mac")).args(args).output().expect("run mac")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn poly_of_a_fundamental_weight_is_a_monomial_function() {
    let o = mac(&["poly", "--n", "2", "--lambda", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["coeffs"], serde_json::json!([[[1, 0], "1"]]));
    assert_eq!(v["config"]["lambda"], serde_json::json!([1, 0]));
}

#[test]
fn poly_two_terms() {
    let v = json(&mac(&["poly", "--n", "2", "--lambda", "2,0"]));
    let c = v["result"]["coeffs"].as_array().unwrap();
    assert_eq!(c.len(), 2);
    assert_eq!(c[1][0], serde_json::json!([1, 1]));
}

#[test]
fn non_dominant_is_an_input_error() {
    let o = mac(&["poly", "--n", "2", "--lambda", "0,2"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["error"]["kind"], "input");
    assert!(v["error"]["message"].as_str().unwrap().contains("not dominant"));
}

#[test]
fn resource_limit_exit_code() {
    let o = mac(&["affine", "char", "--depth", "40"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["error"]["kind"], "resource");
}

#[test]
fn verify_suites_pass() {
    for suite in ["commute", "polynomials", "central-trace", "affine"] {
        let o = mac(&["verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
        let v = json(&o);
        assert_eq!(v["result"]["pass"], true, "{suite}");
        assert_eq!(v["config"]["command"], format!("verify {suite}"));
    }
}

#[test]
fn reports_are_deterministic() {
    let a = mac(&["verify", "commute", "--seed", "7"]).stdout;
    let b = mac(&["verify", "commute", "--seed", "7"]).stdout;
    assert_eq!(a, b);
    let single = Command::new(env!("CARGO_BIN_EXE_mac"))
        .args(["verify", "commute", "--seed", "7"])
        .env("MAC_THREADS", "1")
        .output()
        .unwrap()
        .stdout;
    assert_eq!(a, single);
    let c = mac(&["verify", "commute", "--seed", "8"]).stdout;
    assert_ne!(a, c);
}

#[test]
fn affine_char_records_truncation() {
    let v = json(&mac(&["affine", "char", "--n", "2", "--r", "0", "--depth", "4"]));
    let cfg = &v["config"];
    assert_eq!(cfg["depth"], 4);
    assert!(cfg["height"].as_u64().unwrap() > 0);
    assert!(cfg["weyl_len"].as_u64().unwrap() > 0);
    let mults = v["result"]["mults"].as_array().unwrap();
    let at = |b: [i64; 2]| {
        mults
            .iter()
            .find(|m| m["beta"] == serde_json::json!(b))
            .map(|m| m["mult"].as_u64().unwrap())
    };
    // Partition numbers along the imaginary direction.
    assert_eq!(at([3, 3]), Some(3));
    assert_eq!(at([4, 4]), Some(5));
}

#[test]
fn affine_extract_cross_validates() {
    let o = mac(&["affine", "extract", "--depth", "2", "--samples", "3", "--holdout", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["commutator_zero"], true);
    let levels = v["result"]["levels"].as_array().unwrap();
    assert_eq!(levels[0]["samples"].as_array().unwrap().len(), 3);
    assert_eq!(levels[1]["samples_required"], 4);
    for l in levels {
        assert_eq!(l["holdout"][0]["zero"], true);
    }
}

#[test]
fn text_format() {
    let o = mac(&["psi", "--n", "2", "--height", "1", "--theta", "values:2,1/2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.lines().any(|l| l.starts_with("config.theta_mode") && l.ends_with("rational-specialized")));
    assert!(s.lines().any(|l| l.starts_with("schema") && l.ends_with('1')));
}

#[test]
fn experimental_report_runs() {
    let v = json(&mac(&["experimental", "dominant-trace", "--l", "0", "--level", "1", "--height", "3"]));
    assert_eq!(v["result"]["level"], 1);
    assert!(v["result"]["pairs"].as_u64().is_some());
}

#[test]
fn normalized_extract_reports_weyl_symmetry() {
    let o = mac(&["affine", "extract", "--depth", "1", "--height", "2", "--source", "normalized"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for l in v["result"]["levels"].as_array().unwrap() {
        assert_eq!(l["leading_terms_ok"], true);
        assert_eq!(l["weyl_symmetry"][1]["asymmetric"], serde_json::json!([]));
    }
}
