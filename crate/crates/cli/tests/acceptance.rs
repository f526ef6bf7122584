//! Runs `unitsurj corpus run` twice on the full corpus and prints one
//! PASS/FAIL line per acceptance criterion.
//!
//! Criterion 14 is expected to fail: two-sided saturation over `M_2(Z/2)`
//! is not idempotent. The process fails when any other criterion fails, or
//! when criterion 14 stops failing in the documented way.

use std::process::{Command, ExitCode};

use serde_json::Value;

const KNOWN_FAILURE: &str =
    "M_2(Z/2): two-sided saturation is not idempotent on 9077 of 65536 subsets; \
     smallest: W = {[0,0;0,1]}";

fn corpus_run() -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_unitsurj"))
        .args(["corpus", "run", "--seed", "0"])
        .output()
        .expect("binary runs");
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stable_section(mut envelope: Value) -> String {
    envelope.as_object_mut().expect("envelope").remove("timing");
    envelope.to_string()
}

fn main() -> ExitCode {
    let first = corpus_run();
    let second = corpus_run();
    let report = &first["result"];
    let identical = stable_section(first.clone()) == stable_section(second);

    let mut unexpected = Vec::new();
    for c in report["criteria"].as_array().expect("criteria") {
        let id = c["id"].as_u64().expect("id");
        let mut passed = c["passed"] == true;
        if id == 15 {
            passed &= identical;
        }
        let failures: Vec<&str> = c["failures"]
            .as_array()
            .expect("failures")
            .iter()
            .map(|f| f.as_str().expect("failure text"))
            .collect();
        println!(
            "{} criterion {id:>2}: {} ({} checked)",
            if passed { "PASS" } else { "FAIL" },
            c["name"].as_str().expect("name"),
            c["checked"]
        );
        for f in &failures {
            println!("      {f}");
        }
        if id == 15 && !identical {
            println!("      the two invocations differ outside the timing section");
        }
        let expected = if id == 14 {
            !passed && failures.len() == 1 && failures[0].starts_with(KNOWN_FAILURE)
        } else {
            passed
        };
        if !expected {
            unexpected.push(id);
        }
    }
    println!(
        "corpus: {} rings, {} products",
        report["ringCount"], report["productCount"]
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
