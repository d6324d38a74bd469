use std::process::{Command, Output};

fn medial(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_medial")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_order_p2() {
    let o = medial(&["count", "--group", "order-p2", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "closed-form 116\ncyclic 48\nzp2 68\nenumerated 116\nmatch\n");
}

#[test]
fn count_cyclic_enumerates() {
    let o = medial(&["count", "--group", "cyclic", "--p", "2", "--k", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "closed-form 256\nenumerated 256\nmatch\n");
}

#[test]
fn usage_errors() {
    assert_eq!(medial(&["count", "--group", "zp2", "--p", "4"]).status.code(), Some(1));
    assert_eq!(medial(&["count", "--group", "cyclic", "--p", "3"]).status.code(), Some(1));
    assert_eq!(medial(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(medial(&["enumerate", "--group", "zp2", "--p", "3", "--format", "xml"]).status.code(), Some(1));
    assert_eq!(medial(&["crosscheck", "--group", "zp2", "--p", "5"]).status.code(), Some(1));
    assert_eq!(medial(&["count", "--group", "n", "--n", "8"]).status.code(), Some(3));
}

#[test]
fn crosscheck_reports_agreement() {
    let o = medial(&["crosscheck", "--group", "zp2", "--p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("9 = 9 OK\n"));
    let o = medial(&["crosscheck", "--group", "cyclic", "--p", "2", "--k", "2", "--format", "jsonl"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["classes"], 4);
    assert_eq!(v["verdict"], "OK");
}

#[test]
fn enumerate_jsonl_records() {
    let o = medial(&["enumerate", "--group", "zp2", "--p", "3", "--tables", "--format", "jsonl"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 68);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["group"], "zp2:p=3");
        assert_eq!(v["phi"].as_array().unwrap().len(), 4);
        assert_eq!(v["c"].as_array().unwrap().len(), 2);
        assert_eq!(v["table"].as_array().unwrap().len(), 9);
        assert!(v["case_tag"].as_str().unwrap().starts_with("case"));
    }
    let o = medial(&["enumerate", "--group", "cyclic", "--p", "3", "--k", "1"]);
    let first: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(first, serde_json::json!({"group": "cyclic:p=3,k=1", "phi": 1, "psi": 1, "c": [0], "case_tag": "cyclic"}));
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let args = ["enumerate", "--group", "zp2", "--p", "5", "--format", "text"];
    let a = medial(&args);
    let b = medial(&args);
    let mut with_jobs = vec!["--jobs", "2"];
    with_jobs.extend(args);
    let c = medial(&with_jobs);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert!(stdout(&a).ends_with("total 594\n"));
}

#[test]
fn exported_tables_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tables");
    let o = medial(&["export", "--group", "zp2", "--p", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut names: Vec<String> =
        std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names.len(), 68);
    assert_eq!(names[0], "00000_case1.scalar-scalar.regular.txt");

    let mut all = String::new();
    for n in &names {
        all.push_str(&std::fs::read_to_string(out.join(n)).unwrap());
    }
    let file = dir.path().join("all.txt");
    std::fs::write(&file, all).unwrap();
    let o = medial(&["verify", "--in", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report = stdout(&o);
    assert_eq!(report.lines().filter(|l| l.contains("latin yes medial yes")).count(), 68);
    assert!(report.ends_with("checked 68 tables\n"));
}

#[test]
fn verify_flags_non_medial_tables() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.txt");
    // a Latin square of order 4 that is not medial
    std::fs::write(&file, "4\n0 1 2 3\n1 2 3 0\n3 0 1 2\n2 3 0 1\n2\n0 0\n0 0\n").unwrap();
    let o = medial(&["verify", "--in", file.to_str().unwrap()]);
    let report = stdout(&o);
    assert!(report.contains("table 0: order 4 latin yes medial no"), "{report}");
    assert!(report.contains("table 1: order 2 latin no"));
    std::fs::write(&file, "3\n0 1\n").unwrap();
    assert_eq!(medial(&["verify", "--in", file.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn interpolate_series() {
    let o = medial(&["interpolate", "--series", "zp2", "--primes", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("f(x) = x^4 - x^2 - x - 1\ninteger coefficients: yes\n"));
    let o = medial(&["interpolate", "--series", "cyclic", "--k", "2", "--primes", "5"]);
    assert!(stdout(&o).contains("f(x) = x^4 - x^3 - 2*x\n"));
}
