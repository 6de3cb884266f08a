use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scheme-spectra"))
        .args(args)
        .env_remove("SCHEME_SPECTRA_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).expect("valid json"))
}

#[test]
fn pmatrix_pretty_matches_printed_h43() {
    let o = run(&["pmatrix", "--scheme", "hamming:d=4,q=3"]);
    assert_eq!(o.status.code(), Some(0));
    let want = "\
1   8  24  32  16
1   5   6  -4  -8
1   2  -3  -4   4
1  -1  -3   5  -2
1  -4   6  -4   1
";
    assert!(stdout(&o).ends_with(want), "{}", stdout(&o));
}

#[test]
fn json_envelope_and_big_integers_as_strings() {
    let (code, v) = json(&["pmatrix", "--scheme", "johnson:n=27,d=5"]);
    assert_eq!(code, 0);
    for k in ["command", "parameters", "results", "status", "elapsed_ms"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    assert_eq!(v["command"], "pmatrix");
    assert!(v["elapsed_ms"].is_null());
    let m = &v["results"]["matrix"];
    assert_eq!(m[0][5], "26334");
    assert!(m[0][5].is_string());
}

#[test]
fn verify_nonbinary_lists_exception_and_exits_zero() {
    let (code, v) = json(&["verify", "H-THM-NONBINARY", "--box", "q=3..8,d=1..30"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass-with-listed-exceptions");
    let ex = v["results"]["exceptions"].as_array().unwrap();
    assert_eq!(ex.len(), 1);
    assert_eq!(ex[0]["instance"], "hamming:d=4,q=3");
}

#[test]
fn verify_failure_exits_one() {
    let o = run(&["verify", "C-PROP", "--box", "q=2,d=2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn q0_value() {
    let o = run(&["q0", "--d", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "q0(6) = 7\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["pmatrix", "--scheme", "dualpolar:q=2,d=5,e=1/2"],
        vec!["pmatrix", "--scheme", "hamming:d=4"],
        vec!["pmatrix", "--schema", "hamming:d=4,q=3"],
        vec!["verify", "NOT-AN-ID"],
        vec!["verify", "H-THM-BINARY", "--box", "q=2,d=5..1"],
        vec!["q0", "--d", "101"],
        vec!["scan", "--box", "n=4..8"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn csv_has_header_and_lf() {
    let o = run(&["scan", "--min", "3", "--max", "3", "--format", "csv"]);
    let s = stdout(&o);
    assert!(!s.contains('\r'));
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "d,q,j,distinct_count,explanations");
    assert_eq!(lines.len(), 8);
    assert!(lines.contains(&"7,2,4,3,L-coin2-i;L-coin2-iii"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let a = run(&["verify", "H-PROP-12", "--format", "json", "--jobs", "1"]);
    let b = run(&["verify", "H-PROP-12", "--format", "json", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_scheme-spectra"))
        .args(["scan", "--format", "json"])
        .env("SCHEME_SPECTRA_JOBS", "3")
        .output()
        .unwrap();
    assert_eq!(c.stdout, run(&["scan", "--format", "json"]).stdout);
}

#[test]
fn timing_flag_fills_elapsed() {
    let (_, v) = json(&["q0", "--d", "5", "--timing"]);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("scheme-spectra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p.csv");
    let o = run(&["pmatrix", "--scheme", "johnson:n=8,d=3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let s = std::fs::read_to_string(&path).unwrap();
    assert_eq!(s.lines().next(), Some("i,j0,j1,j2,j3"));
    assert_eq!(s.lines().nth(1), Some("0,1,15,30,10"));
}

#[test]
fn bounds_point_and_sweep() {
    let (code, v) = json(&["bounds", "Q-PROP-EST", "--params", "q=4,d=5,j=2,i=3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["holds"], true);
    let o = run(&["bounds", "H-LEM-3TERM", "--params", "q=3,d=5,j=1,i=2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("hypothesis"));
    let (code, v) = json(&["bounds", "H-LEM-QPOW"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["violation_count"], 0);
}

#[test]
fn zeros_identities_analyze() {
    let (code, v) = json(&["zeros", "--d-max", "30"]);
    assert_eq!(code, 0);
    let zs = v["results"]["zeros"].as_array().unwrap();
    assert!(zs.iter().any(|z| z == &serde_json::json!([9, 2, 3])));
    assert!(zs.iter().any(|z| z == &serde_json::json!([17, 4, 7])));
    assert_eq!(run(&["identities", "--scheme", "grassmann:q=2,n=7,d=3"]).status.code(), Some(0));
    let o = run(&["analyze", "--scheme", "hermitian:q=4,d=5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Q-THM-iii"));
}

#[test]
fn json_round_trips_verification_report() {
    let o = run(&["verify", "A-THM", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let r: scheme_spectra::extremal::VerificationReport = serde_json::from_value(v["results"].clone()).unwrap();
    assert_eq!(r.theorem_id, "A-THM");
    assert_eq!(serde_json::to_value(&r).unwrap(), v["results"]);
}
