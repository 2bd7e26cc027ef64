mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lcpath::commands::exit;
use lcpath::fixtures;
use lcpath_core::{trace_path, KktHomotopy, TracerConfig};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn lcpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcpath")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    text.lines().find_map(|l| l.strip_prefix(prefix.as_str())).unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

fn parse_vec(s: &str) -> Vec<f64> {
    s.trim_matches(|c| c == '[' || c == ']').split(", ").map(|v| v.parse().unwrap()).collect()
}

fn write_tmp(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn solve_ex4_1_exits_zero() {
    let o = lcpath(&["solve", fixture("ex4_1").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(exit::OK), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert_eq!(field(&s, "status"), "solved");
    assert_eq!(field(&s, "verified"), "true");
    assert!(common::max_abs_diff(&parse_vec(field(&s, "x")), &[1.0, 0.0]) <= 1e-3);
}

#[test]
fn solve_ex4_2_with_yu() {
    let o = lcpath(&["solve", fixture("ex4_2").to_str().unwrap(), "--variant", "yu-psd"]);
    assert_eq!(o.status.code(), Some(exit::OK));
    let s = stdout(&o);
    assert_eq!(field(&s, "variant"), "yu-psd");
    assert!(common::max_abs_diff(&parse_vec(field(&s, "x")), &[0.5, 0.0]) <= 1e-3);
}

#[test]
fn tracer_failure_exit_code() {
    let o = lcpath(&["solve", fixture("ex4_1").to_str().unwrap(), "--variant", "zhao-n", "--max-outer", "50"]);
    assert_eq!(o.status.code(), Some(exit::TRACER_FAILURE));
    assert_eq!(field(&stdout(&o), "status"), "max-iter");
}

#[test]
fn input_errors_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("nonsquare.json", r#"{"A": [[1, 2], [3]], "q": [1, 1]}"#, "A[1]"),
        ("infeasible.json", r#"{"A": [[-1, 2], [3, -1]], "q": [1, -0.5], "x0": [3, 0.5]}"#, "x0"),
        ("broken.json", "{\"A\": [[1]],\n \"q\": [1,,]}", "line 2"),
    ];
    for (name, body, needle) in cases {
        let p = write_tmp(&dir, name, body);
        let o = lcpath(&["solve", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(exit::INPUT), "{name}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(needle), "{name}: {err}");
    }
    assert_eq!(lcpath(&["solve", "/no/such/file.json"]).status.code(), Some(exit::INPUT));
    assert_eq!(lcpath(&["solve", fixture("ex4_1").to_str().unwrap(), "--variant", "x"]).status.code(), Some(exit::INPUT));
    assert_eq!(lcpath(&["solve", fixture("ex4_1").to_str().unwrap(), "--l0", "2"]).status.code(), Some(exit::INPUT));
    assert_eq!(lcpath(&["--help"]).status.code(), Some(0));
}

#[test]
fn classify_reports_fixture_classes() {
    let run = |name: &str| {
        let o = lcpath(&["classify", fixture(name).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(exit::OK));
        stdout(&o)
    };
    assert_eq!(field(&run("ex4_1"), "is_N"), "true");
    assert_eq!(field(&run("ex4_2"), "is_PSD"), "true");
    assert_eq!(field(&run("ex4_7"), "N0_exact_order"), "2");
    assert!(run("ex4_5").contains("almost_C0 (density 30): yes"));
}

#[test]
fn oracle_outputs() {
    let o = lcpath(&["oracle", fixture("ex4_6").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(exit::OK));
    assert!(stdout(&o).contains("x = [1, 0, 2, 0]"), "{}", stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    let p = write_tmp(&dir, "id.json", r#"{"A": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "q": [1, 1, 1]}"#);
    let s = stdout(&lcpath(&["oracle", p.to_str().unwrap()]));
    assert_eq!(field(&s, "solutions"), "1");
    assert!(s.contains("x = [0, 0, 0]  w = [1, 1, 1]"));
    assert_eq!(field(&s, "lemke"), "solution [0.000000, 0.000000, 0.000000]");

    let o = lcpath(&["oracle", fixture("ex4_4").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(exit::OK));
    assert!(stdout(&o).contains("lemke: "));

    let n = 13;
    let rows: Vec<String> =
        (0..n).map(|i| format!("[{}]", (0..n).map(|j| if i == j { "1" } else { "0" }).collect::<Vec<_>>().join(","))).collect();
    let body = format!(r#"{{"A": [{}], "q": [{}]}}"#, rows.join(","), vec!["1"; n].join(","));
    let p = write_tmp(&dir, "big.json", &body);
    assert_eq!(lcpath(&["oracle", p.to_str().unwrap()]).status.code(), Some(exit::SIZE_GUARD));
}

#[test]
fn trace_export_matches_in_memory_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ex4_1.csv");
    let o = lcpath(&["trace-export", fixture("ex4_1").to_str().unwrap(), out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(exit::OK));

    let mut rdr = csv::Reader::from_path(&out).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header.join(","),
        "outer_index,event,lambda,step_a,residual,det_sign,x_1,x_2,z1_1,z1_2,z2_1,z2_2"
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    let num = |r: &csv::StringRecord, i: usize| -> f64 { r[i].parse().unwrap() };

    let l = fixtures::load("ex4_1");
    let sys = KktHomotopy::new(l.inst.clone(), l.x0.clone(), l.z1_0.clone(), l.z2_0.clone()).unwrap();
    let mem = trace_path(&sys, &TracerConfig::default()).trace;
    assert_eq!(rows.len(), mem.len());
    for (r, m) in rows.iter().zip(&mem) {
        assert_eq!(num(r, 2).to_bits(), m.lambda.to_bits());
        for (k, v) in m.y.iter().enumerate() {
            assert_eq!(num(r, 6 + k).to_bits(), v.to_bits());
        }
    }
    assert_eq!(num(&rows[0], 2), 1.0);
    assert!(num(&rows[0], 4) <= 1e-13);
    let last = rows.last().unwrap();
    assert!(num(last, 2) <= 1e-7);
    assert!(common::max_abs_diff(&[num(last, 6), num(last, 7)], &[1.0, 0.0]) <= 1e-3);
}

#[test]
fn unwritable_output_exits_six() {
    let f = fixture("ex4_1");
    let bad = "/nonexistent-dir/trace.csv";
    assert_eq!(lcpath(&["trace-export", f.to_str().unwrap(), bad]).status.code(), Some(exit::OUTPUT_IO));
    assert_eq!(lcpath(&["solve", f.to_str().unwrap(), "--trace", bad]).status.code(), Some(exit::OUTPUT_IO));
}

#[test]
fn solve_trace_flag_writes_variant_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("yu.csv");
    let o = lcpath(&["solve", fixture("ex4_2").to_str().unwrap(), "--variant", "yu-psd", "--trace", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(exit::OK));
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.starts_with("outer_index,event,lambda,step_a,residual,det_sign,x_1,x_2,y_1,y_2\n"));
}

#[test]
fn bench_reports_all_examples() {
    let o = lcpath(&["bench"]);
    assert_eq!(o.status.code(), Some(exit::OK));
    let s = stdout(&o);
    assert!(s.contains("kkt solved and verified: 7/7"));
    let ex43 = s.lines().find(|l| l.starts_with("ex4_3  kkt")).unwrap();
    assert!(ex43.contains("[1.000000, 0.000000]"), "{ex43}");
}
