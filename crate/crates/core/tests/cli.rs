use std::collections::BTreeSet;
use std::process::{Command, Output};

use gamma_groups::report::Report;
use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gamma-groups"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Integer and fraction tokens such as `16`, `-1`, `1/2`.
fn numbers(text: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, out: &mut BTreeSet<String>| {
        let t = cur.trim_start_matches('/').trim_end_matches(['/', '-']);
        if t.chars().any(|c| c.is_ascii_digit()) {
            out.insert(t.to_string());
        }
        cur.clear();
    };
    for ch in text.chars() {
        if ch.is_ascii_digit() || ch == '/' || (ch == '-' && cur.is_empty()) {
            cur.push(ch);
        } else {
            flush(&mut cur, &mut out);
        }
    }
    flush(&mut cur, &mut out);
    out
}

/// Numbers in the values of a JSON report, skipping identifiers and prose.
fn json_numbers(v: &Value, key: &str, out: &mut BTreeSet<String>) {
    if ["claim_id", "description", "anchor", "tool_version", "input"].contains(&key) {
        return;
    }
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| json_numbers(v, k, out)),
        Value::Array(a) => a.iter().for_each(|v| json_numbers(v, key, out)),
        Value::Number(n) => {
            out.insert(n.to_string());
        }
        Value::String(s) => out.extend(numbers(s)),
        _ => {}
    }
}

/// Numbers in markdown table cells, skipping the label column.
fn markdown_numbers(md: &str) -> BTreeSet<String> {
    md.lines()
        .filter(|l| l.starts_with('|') && !l.starts_with("|---"))
        .flat_map(|l| l.split('|').skip(2).flat_map(numbers).collect::<Vec<_>>())
        .collect()
}

#[test]
fn catalog_list_names_every_entry() {
    let o = cli(&["catalog", "list"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v["result"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    for n in ["pauli", "Q2", "q2", "D_I", "D_V", "Delta1", "Delta3"] {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn analyze_pauli() {
    let o = cli(&["analyze", "pauli"]);
    assert!(o.status.success());
    let r = Report::from_json(&stdout(&o)).unwrap();
    let p = r.profile.unwrap();
    assert_eq!(
        (p.order, p.class_count, p.census.as_deref()),
        (16, 10, Some("8x1+2x2"))
    );
}

#[test]
fn analyze_dirac_group() {
    let r = Report::from_json(&stdout(&cli(&["analyze", "D_II"]))).unwrap();
    let p = r.profile.unwrap();
    assert_eq!(p.invariant, Some(-1));
    assert_eq!((p.index2_count, p.index2_iso_classes), (15, 2));
    assert_eq!(p.components, ["b", "d"]);
}

#[test]
fn analyze_generator_file_with_identity_only() {
    let dir = std::env::temp_dir().join(format!("gg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trivial.json");
    std::fs::write(
        &path,
        r#"{"name":"trivial","dimension":2,"generators":["[[1,0],[0,1]]"]}"#,
    )
    .unwrap();
    let o = cli(&["analyze", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(
        Report::from_json(&stdout(&o))
            .unwrap()
            .profile
            .unwrap()
            .order,
        1
    );
}

#[test]
fn json_report_round_trips_byte_for_byte() {
    for args in [
        &["analyze", "Delta2"][..],
        &["verify-paper", "--filter", "pauli.*"],
        &["catalog", "list"],
    ] {
        let text = stdout(&cli(args));
        assert_eq!(
            Report::from_json(&text).unwrap().to_json(),
            text,
            "{args:?}"
        );
    }
}

#[test]
fn output_is_reproducible() {
    let a = stdout(&cli(&["verify-paper", "--filter", "quaternion.*"]));
    let b = stdout(&cli(&["verify-paper", "--filter", "quaternion.*"]));
    assert_eq!(a, b);
}

#[test]
fn markdown_and_json_carry_the_same_numbers() {
    for args in [
        &["analyze", "Delta1"][..],
        &["verify-paper", "--filter", "invariants.*"],
    ] {
        let json: Value = serde_json::from_str(&stdout(&cli(args))).unwrap();
        let mut from_json = BTreeSet::new();
        json_numbers(&json, "", &mut from_json);
        assert!(!from_json.is_empty(), "{args:?}");
        let md = stdout(&cli(&[args, &["--format", "markdown"]].concat()));
        assert_eq!(from_json, markdown_numbers(&md), "{args:?}");
    }
}

#[test]
fn verify_paper_pauli_claims() {
    let o = cli(&["verify-paper", "--filter", "pauli.*"]);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.claims.len(), 6);
    assert!(r.all_pass());
    let ids: Vec<&str> = r.claims.iter().map(|c| c.claim_id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
    assert!(r.claims.iter().all(|c| c.runtime_ms == 0));
    assert!(r.timings.is_empty());
}

#[test]
fn unknown_claim_filter_is_a_usage_error() {
    let o = cli(&["verify-paper", "--filter", "nonexistent.*"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nonexistent"));
}

#[test]
fn bad_arguments_exit_with_two() {
    assert_eq!(
        cli(&["brackets", "pauli", "--table", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(cli(&["analyze", "no_such_group"]).status.code(), Some(2));
    assert_eq!(cli(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn failing_table_exits_with_one() {
    // The Pauli realization satisfies table 4, not table 11.
    assert_eq!(
        cli(&["brackets", "pauli", "--table", "4"]).status.code(),
        Some(0)
    );
    assert_eq!(
        cli(&["brackets", "pauli", "--table", "11"]).status.code(),
        Some(1)
    );
}

#[test]
fn subgroups_of_the_dirac_group() {
    let o = cli(&["subgroups", "D_II", "--order", "16", "--classify"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["count"], 15);
    assert_eq!(v["result"]["iso_classes"], 2);
    let primaries: BTreeSet<&str> = v["result"]["subgroups"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|s| s["components"]["primary"].as_str())
        .collect();
    assert_eq!(primaries, BTreeSet::from(["b", "d"]));
}

#[test]
fn search_single_signature() {
    let o = cli(&["search", "--signature", "+++-:anti"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let classes = v["result"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["identified"], "D_I");
}

#[test]
fn extensions_of_one_base() {
    let o = cli(&["extensions", "--base", "D_II", "--square", "plus"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"][0]["classes"][0]["identified"], "Delta1");
}

#[test]
fn timings_flag_records_phases() {
    let o = cli(&[
        "--timings",
        "extensions",
        "--base",
        "D_I",
        "--square",
        "minus",
    ]);
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert!(r.timings.contains_key("extensions"));
}
