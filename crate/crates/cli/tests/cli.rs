use std::process::{Command, Output};

fn fatgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fatgraph")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn coeff_weight_one_text() {
    let o = fatgraph(&["coeff", "--n", "1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("[1/12]"), "{s}");
    assert!(s.contains("[12]"), "{s}");
}

#[test]
fn coeff_weight_two_json() {
    let o = fatgraph(&["coeff", "--n", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let expected = serde_json::json!({
        "n": 2,
        "order": ["2", "1,1"],
        "B": [["-1/120", "29/720"], ["0", "1/72"]],
        "A": [["-120", "348"], ["0", "72"]],
    });
    assert_eq!(v, expected);
}

#[test]
fn coeff_out_of_range_exits_two() {
    let o = fatgraph(&["coeff", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("outside the computed range"));
    assert!(o.stdout.is_empty());
}

#[test]
fn wpoly_lines() {
    let o = fatgraph(&["wpoly", "--partition", "2,1", "--partition", "3", "--partition", "1,0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "W[2,1]* = -1440*k2*k1 - 13680*k3\nW[3]* = 1680*k3\nW[1,0]* = -24*k1*k0 - 36*k1\n");
}

#[test]
fn wpoly_json() {
    let o = fatgraph(&["wpoly", "--partition", "1,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"partition": "1,1", "terms": {"1,1": "72", "2": "348"}}));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fatgraph(&["wpoly", "--partition", "2,x"]).status.code(), Some(2));
    assert_eq!(fatgraph(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(fatgraph(&["coeff", "--n", "0"]).status.code(), Some(2));
    assert_eq!(fatgraph(&["enumerate", "--max-half-edges", "0"]).status.code(), Some(2));
}

#[test]
fn verify_orientation_passes() {
    let o = fatgraph(&["verify", "--suite", "orientation"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let s = stdout(&o);
    for p in [5, 7, 9] {
        assert!(s.lines().any(|l| l.starts_with("PASS") && l.contains(&format!("valence {p},"))), "{s}");
    }
    assert!(!s.contains("FAIL"), "{s}");
}

#[test]
fn verify_closedform_weight_two() {
    let o = fatgraph(&["verify", "--suite", "closedform", "--n", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["check"].as_str().unwrap()).collect();
    for want in ["W[2]*", "W[1,1]*", "W[1,0]*"] {
        assert!(names.contains(&want), "{names:?}");
    }
    assert!(checks.iter().all(|c| c["status"] == "PASS"));
}

#[test]
fn verify_all_on_tiny_corpus() {
    let o = fatgraph(&["verify", "--suite", "all", "--max-half-edges", "4", "--n", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("0 failing\n"));
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let run = |w: &str| {
        stdout(&fatgraph(&[
            "verify",
            "--suite",
            "ainf",
            "--max-half-edges",
            "6",
            "--seed",
            "7",
            "--format",
            "json",
            "--workers",
            w,
        ]))
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn enumerate_small_corpus() {
    let o = fatgraph(&["enumerate", "--max-half-edges", "6", "--format", "json"]);
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 10);
    let trivalent = lines.iter().filter(|l| l["codimension"] == 0).count();
    assert_eq!(trivalent, 3);
    for l in &lines {
        let chi = l["euler_characteristic"].as_i64().unwrap();
        let g = l["genus"].as_i64().unwrap();
        let s = l["punctures"].as_i64().unwrap();
        assert_eq!(chi, 2 - 2 * g - s);
    }
}
