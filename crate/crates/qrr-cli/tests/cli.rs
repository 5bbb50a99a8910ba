//! End-to-end checks of the command-line interface: output contracts,
//! exit codes, and the JSON-lines round trip.

use std::process::{Command, Output};

fn qrr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrr"))
        .args(args)
        .env_remove("QRR_DEFAULT_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn coeffs_prints_g_table() {
    let out = qrr(&["coeffs", "--series", "G", "--upto", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "1 1 1 1 2 2 3");
}

#[test]
fn coeffs_unknown_series_is_usage_error() {
    let out = qrr(&["coeffs", "--series", "nope", "--upto", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn recursion_small_table() {
    let out = qrr(&["recursion", "--upto", "1"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("g: 1 1"), "{text}");
    assert!(text.contains("h: 1 0"), "{text}");
    assert!(text.contains("status ok"), "{text}");
}

#[test]
fn verify_subset_passes_with_exit_zero() {
    let out = qrr(&["verify", "--ids", "RR_MAIN_G,RM20_1", "--order", "25"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("RR_MAIN_G"), "{text}");
    assert!(text.contains("pass"), "{text}");
}

#[test]
fn verify_unknown_id_is_rejected_before_running() {
    let out = qrr(&["verify", "--ids", "NOT_AN_ID"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NOT_AN_ID"));
}

#[test]
fn bad_order_is_usage_error() {
    let out = qrr(&["verify", "--order", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_variable_sets_default_order() {
    let out = Command::new(env!("CARGO_BIN_EXE_qrr"))
        .args(["verify", "--ids", "RR_MAIN_G", "--json"])
        .env("QRR_DEFAULT_ORDER", "17")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(v["order"], 17);
}

#[test]
fn list_names_every_entry_with_anchor() {
    let out = qrr(&["list", "--json"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.len() >= 45, "only {} entries", lines.len());
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(!v["id"].as_str().unwrap().is_empty());
        assert!(!v["anchor"].as_str().unwrap().is_empty());
    }
}

#[test]
fn json_stream_round_trips_to_the_exit_code() {
    let out = qrr(&[
        "verify",
        "--ids",
        "RR_MAIN_G,RR_MAIN_H,GHIJ_5,QUASIPERIODICITY",
        "--order",
        "25",
        "--json",
    ]);
    let mut parsed_all_pass = true;
    let mut count = 0;
    for line in stdout_of(&out).lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("one JSON object per line");
        count += 1;
        for key in ["id", "instantiation", "order", "status", "millis"] {
            assert!(v.get(key).is_some(), "missing {key} in {v}");
        }
        assert!(v.get("first_mismatch").is_some());
        match v["status"].as_str().unwrap() {
            "pass" => assert!(v["first_mismatch"].is_null()),
            "fail" => {
                parsed_all_pass = false;
                assert!(!v["first_mismatch"].is_null());
            }
            "skipped" => {}
            other => panic!("unexpected status {other}"),
        }
    }
    assert_eq!(count, 4);
    // the verdict reconstructed from the stream matches the exit code
    assert_eq!(out.status.code(), Some(if parsed_all_pass { 0 } else { 1 }));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn text_and_json_agree_on_the_verdict() {
    for ids in ["RR_MAIN_G", "RTF_C", "HK_SQRT"] {
        let text = qrr(&["verify", "--ids", ids, "--order", "20"]);
        let json = qrr(&["verify", "--ids", ids, "--order", "20", "--json"]);
        assert_eq!(text.status.code(), json.status.code(), "{ids}");
    }
}

#[test]
fn partitions_cross_checks_and_exits_zero() {
    let out = qrr(&["partitions", "--upto", "25", "--class", "MOD5_PM1"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("status ok"), "{text}");
    // unknown class → usage error
    let out = qrr(&["partitions", "--class", "BOGUS"]);
    assert_eq!(out.status.code(), Some(2));
}
