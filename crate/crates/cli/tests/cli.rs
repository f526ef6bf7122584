use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitsurj"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (value, out.status.code().expect("exit code"))
}

#[test]
fn ring_info_z12() {
    let (v, code) = json_of(&["ring", "info", "Z/12"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "ring info Z/12");
    assert_eq!(v["spec"], "Z/12");
    assert_eq!(v["result"]["units"], json!([1, 5, 7, 11]));
    assert_eq!(v["result"]["rad"], json!([0, 6]));
    assert_eq!(v["result"]["maximalIdeals"], 2);
    assert_eq!(v["result"]["idempotents"], json!([0, 1, 4, 9]));
    assert_eq!(v["result"]["connectedModRad"], false);
    assert!(v["timing"]["totalMs"].is_number());
    assert!(v["version"].is_string());
}

#[test]
fn polynomial_and_product_elements_render_as_strings() {
    let (v, _) = json_of(&["ring", "info", "GF(2)[x]/(x^2)"]);
    assert_eq!(v["result"]["units"], json!(["1", "x+1"]));
    let (v, _) = json_of(&["ring", "info", "prod(Z/2,Z/3)"]);
    assert_eq!(v["result"]["units"], json!(["(1,1)", "(1,2)"]));
}

#[test]
fn presented_integers_mod_5() {
    let (v, code) = json_of(&["star", "presented", "Z", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["hasStar"], false);
    assert_eq!(v["result"]["witness"], 2);
    assert_eq!(v["result"]["unitImage"], json!([1, 4]));
}

#[test]
fn presented_polynomials() {
    let (v, _) = json_of(&["star", "presented", "GF(2)[x]", "x"]);
    assert_eq!(v["result"]["hasStar"], true);
    assert_eq!(v["result"]["witness"], Value::Null);
    let (v, _) = json_of(&["star", "presented", "GF(2)[x]", "x^2"]);
    assert_eq!(v["result"]["hasStar"], false);
    assert_eq!(v["result"]["witness"], "x+1");
}

#[test]
fn decompose_z10() {
    let (v, code) = json_of(&["decompose", "Z/10", "2"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(
        (r["u"].clone(), r["e"].clone(), r["t"].clone()),
        (json!(7), json!(6), json!(0))
    );
    assert_eq!(r["semiInverse"], 3);
    assert!(r["certificates"]
        .as_object()
        .unwrap()
        .values()
        .all(|c| c == true));
}

#[test]
fn decompose_rejects_non_semi_units() {
    // 0 lies in the radical, so rho(0) = 0.
    let (v, code) = json_of(&["decompose", "Z/10", "0"]);
    assert_eq!(code, 64);
    assert_eq!(v["error"]["kind"], "input");
}

#[test]
fn star_check_reports_all_methods() {
    let (v, code) = json_of(&["star", "check", "Z/12", "--ideal", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["holds"], true);
    assert_eq!(v["result"]["ideal"]["elements"], json!([0, 4, 8]));
    let methods = v["result"]["methods"].as_object().unwrap();
    let names: Vec<&str> = methods.keys().map(String::as_str).collect();
    assert_eq!(names, ["direct", "satEquality", "saturatedSum", "witness"]);
    assert!(methods
        .values()
        .all(|m| m["holds"] == true && m["witness"].is_null()));
}

#[test]
fn star_ring_lists_every_proper_ideal() {
    let (v, _) = json_of(&["star", "ring", "Z/8"]);
    assert_eq!(v["result"]["holds"], true);
    assert_eq!(v["result"]["ideals"].as_array().unwrap().len(), 3);
}

#[test]
fn rho_table_z6() {
    let (v, _) = json_of(&["rho", "table", "Z/6"]);
    let rows = v["result"]["rows"].as_array().unwrap();
    let rhos: Vec<&str> = rows.iter().map(|r| r["rho"].as_str().unwrap()).collect();
    assert_eq!(rhos, ["0", "1", "1", "1", "1", "1"]);
    // 2 * (1 - 2*2) = -6 = 0, and 2 * (1 - 5*2) = -18 = 0.
    assert_eq!(rows[2]["semiInverses"], json!([2, 5]));
}

#[test]
fn ring_ideals_z12() {
    let (v, _) = json_of(&["ring", "ideals", "Z/12"]);
    assert_eq!(v["result"]["count"], 6);
}

#[test]
fn gl_lift_over_z8() {
    let (v, code) = json_of(&["gl", "lift", "Z/8", "2", "--matrix", "3,5;1,6"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["matrix"], json!([[1, 1], [1, 0]]));
    assert_eq!(r["lift"], json!([[1, 1], [1, 0]]));
    assert_eq!(r["det"], 7);
    assert_eq!(r["inverse"], json!([[0, 1], [1, 7]]));
}

#[test]
fn gl_lift_rejects_kernels_outside_the_radical() {
    let (v, code) = json_of(&["gl", "lift", "Z/6", "2", "--matrix", "1,0;0,1"]);
    assert_eq!(code, 64);
    assert!(v["error"]["message"].as_str().unwrap().contains("radical"));
}

#[test]
fn fail_on_false_upgrades_false_verdicts() {
    assert_eq!(run(&["star", "presented", "Z", "5"]).status.code(), Some(0));
    assert_eq!(
        run(&["star", "presented", "Z", "5", "--fail-on-false"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["star", "presented", "Z", "3", "--fail-on-false"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["ring", "info"]).status.code(), Some(64));
    assert_eq!(
        run(&["ring", "info", "Z/12", "--format", "yaml"])
            .status
            .code(),
        Some(64)
    );
    let (v, code) = json_of(&["ring", "info", "Z/"]);
    assert_eq!(code, 64);
    assert!(v["error"]["message"]
        .as_str()
        .unwrap()
        .starts_with("syntax error"));
}

#[test]
fn guards_exit_65() {
    let (v, code) = json_of(&["ring", "ideals", "Z/5000"]);
    assert_eq!(code, 65);
    assert_eq!(v["error"]["kind"], "guard");
    assert_eq!(run(&["ring", "info", "Z/70000"]).status.code(), Some(65));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn text_format() {
    let out = run(&["decompose", "Z/10", "2", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("u: 7\n"));
    assert!(text.contains("  recomposes: true\n"));
}

#[test]
fn identical_arguments_give_identical_payloads() {
    let strip = |args: &[&str]| {
        let (mut v, _) = json_of(args);
        v.as_object_mut().unwrap().remove("timing");
        v.to_string()
    };
    let args = ["star", "ring", "prod(Z/4,GF(3)[x]/(x^2))"];
    assert_eq!(strip(&args), strip(&args));
}

#[test]
fn small_corpus_run() {
    let out = run(&[
        "corpus",
        "run",
        "--max-carrier",
        "12",
        "--product-factor-max",
        "3",
        "--format",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
            .count(),
        15
    );
    assert!(text.lines().any(|l| l.starts_with("FAIL 14")));
}
