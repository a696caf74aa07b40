use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> sumrank_cli::Outcome {
    let mut argv: Vec<String> = vec!["sumrank".into()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let owned = stdin.to_string();
    let mut reader = move || Ok(owned.clone());
    sumrank_cli::run(&argv, &mut reader)
}

fn run_ok(args: &[&str], stdin: &str) -> String {
    let out = run(args, stdin);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    out.stdout
}

fn json_of(text: &str) -> Value {
    serde_json::from_str(text.trim()).unwrap()
}

#[test]
fn field_command_prints_the_canonical_tower() {
    let out = run_ok(&["field", "--p", "2", "--e", "1", "--m", "3"], "");
    let v = json_of(&out);
    assert_eq!(v["g"], serde_json::json!([1, 1, 0, 1]));
    assert_eq!(v["f"], serde_json::json!([0, 1]));
}

#[test]
fn construct_then_verify_both_modes() {
    let doc = run_ok(
        &["construct", "--type", "doubly", "--p", "2", "--m", "3", "--mu", "1", "--r", "3", "--k", "2"],
        "",
    );
    // the construct document echoes the resolved scalars and support
    let v = json_of(&doc);
    assert_eq!(v["spec"]["a"].as_array().unwrap().len(), 1);
    assert_eq!(v["spec"]["beta"].as_array().unwrap().len(), 3);

    let verdict = run_ok(&["verify", "--mode", "both"], &doc);
    let v = json_of(&verdict);
    assert_eq!(v["formula"], 4);
    assert_eq!(v["bruteforce"], 4);
    assert_eq!(v["msrd"], true);
}

#[test]
fn triply_extended_odd_characteristic_is_rejected_by_enumeration() {
    let doc = run_ok(
        &["construct", "--type", "triply", "--p", "3", "--m", "3", "--mu", "1", "--r", "3"],
        "",
    );
    let verdict = run_ok(&["verify"], &doc);
    let v = json_of(&verdict);
    assert_eq!(v["msrd"], false);
    assert_eq!(v["predicted"], false);
}

#[test]
fn scan_triply_grid_matches_parity_rule() {
    let out = run_ok(
        &["scan", "--type", "triply", "--q", "2,3,4", "--m", "2,3", "--mu", "1", "--r", "m", "--format", "csv"],
        "",
    );
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "q,m,mu,r,k,type,n,len,d_formula,d_brute,msrd,predicted,one_weight,error"
    );
    let mut seen = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let q: u64 = cells[0].parse().unwrap();
        let m: u64 = cells[1].parse().unwrap();
        let expected = (q.is_multiple_of(2) && m % 2 == 1).to_string();
        assert_eq!(cells[10], expected, "row: {line}");
        assert_eq!(cells[11], expected, "row: {line}");
        assert!(cells[13].is_empty(), "row: {line}");
        seen += 1;
    }
    assert_eq!(seen, 6);
}

#[test]
fn scan_doubly_one_weight_exactly_at_full_cover() {
    let out = run_ok(
        &["scan", "--type", "doubly", "--q", "2", "--m", "2", "--mu", "1,2,3", "--r", "1", "--k", "2", "--format", "csv"],
        "",
    );
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    // mu = 1 is too short to be 2-dimensional: error marker, scan continues
    let cells: Vec<&str> = rows[0].split(',').collect();
    assert!(!cells[13].is_empty());
    let cells: Vec<&str> = rows[1].split(',').collect();
    assert_eq!(cells[12], "false");
    let cells: Vec<&str> = rows[2].split(',').collect();
    assert_eq!(cells[12], "true");
}

#[test]
fn empty_scan_range_is_a_header_only_table() {
    let out = run(&["scan", "--type", "doubly", "--q", "", "--m", "2", "--format", "csv"], "");
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 1);
}

#[test]
fn output_is_identical_across_worker_counts() {
    let doc = run_ok(
        &["construct", "--type", "doubly", "--p", "2", "--m", "3", "--mu", "1", "--r", "3", "--k", "2"],
        "",
    );
    let base = run_ok(&["verify", "--mode", "both", "--jobs", "1"], &doc);
    for jobs in ["2", "4", "7"] {
        assert_eq!(run_ok(&["verify", "--mode", "both", "--jobs", jobs], &doc), base);
    }
    let scan_args = ["scan", "--type", "triply", "--q", "2,3", "--m", "2,3", "--mu", "1", "--r", "m", "--format", "csv"];
    let scan1 = run_ok(&scan_args, "");
    let mut scan4: Vec<&str> = scan_args.to_vec();
    scan4.extend(["--jobs", "4"]);
    assert_eq!(run_ok(&scan4, ""), scan1);
}

#[test]
fn exit_codes() {
    // unknown flag
    assert_eq!(run(&["field", "--p", "2", "--bogus"], "").code, 2);
    // invalid parameters
    assert_eq!(run(&["field", "--p", "4"], "").code, 2);
    assert_eq!(run(&["construct", "--type", "doubly", "--p", "2"], "").code, 2);
    // enumeration cap exceeded
    let doc = run_ok(
        &["construct", "--type", "doubly", "--p", "2", "--m", "3", "--mu", "1", "--r", "3", "--k", "2"],
        "",
    );
    let out = run(&["verify", "--cap", "2"], &doc);
    assert_eq!(out.code, 3, "stderr: {}", out.stderr);
    // malformed stdin
    assert_eq!(run(&["verify"], "not json").code, 2);
}

#[test]
fn formula_mode_refuses_dependent_body_rows() {
    // q = 2, m = 2 triple extension: the body rows repeat, so only brute
    // force applies
    let doc = run_ok(
        &["construct", "--type", "triply", "--p", "2", "--m", "2", "--mu", "1", "--r", "2"],
        "",
    );
    let out = run(&["verify", "--mode", "formula"], &doc);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("independent body rows"));
    let v = json_of(&run_ok(&["verify"], &doc));
    assert_eq!(v["msrd"], false);
}

#[test]
fn files_compose_commands() {
    let dir = std::env::temp_dir().join(format!("sumrank-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec_path = dir.join("doc.json");
    run_ok(
        &["construct", "--type", "doubly", "--p", "2", "--m", "2", "--mu", "3", "--r", "1", "--k", "2",
          "--out", spec_path.to_str().unwrap()],
        "",
    );
    let verdict = run_ok(&["verify", "--in", spec_path.to_str().unwrap(), "--mode", "both"], "");
    let v = json_of(&verdict);
    assert_eq!(v["msrd"], true);
    let weights = run_ok(&["weights", "--in", spec_path.to_str().unwrap()], "");
    let v = json_of(&weights);
    assert_eq!(v["distribution"]["0"], 1);
    assert_eq!(v["distribution"]["4"], 15);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn construct_accepts_a_spec_document() {
    let field = run_ok(&["field", "--p", "2", "--m", "3"], "");
    let spec = format!(
        r#"{{"field":{},"ell":1,"mu":1,"r":3,"k":2}}"#,
        field.trim()
    );
    let dir = std::env::temp_dir().join(format!("sumrank-cli-spec-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spec.json");
    std::fs::write(&path, &spec).unwrap();
    let doc = run_ok(&["construct", "--type", "doubly", "--in", path.to_str().unwrap()], "");
    let v = json_of(&doc);
    assert_eq!(v["code"]["n"], 5);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn binary_pipeline_end_to_end() {
    let exe = env!("CARGO_BIN_EXE_sumrank");
    let construct = Command::new(exe)
        .args(["construct", "--type", "doubly", "--p", "2", "--m", "3", "--mu", "1", "--r", "3", "--k", "2"])
        .output()
        .unwrap();
    assert!(construct.status.success());
    let mut verify = Command::new(exe)
        .args(["verify", "--mode", "both"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    verify
        .stdin
        .take()
        .unwrap()
        .write_all(&construct.stdout)
        .unwrap();
    let out = verify.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["formula"], 4);
    assert_eq!(v["bruteforce"], 4);
    assert_eq!(v["msrd"], true);
}
