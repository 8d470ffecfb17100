use std::process::{Command, Output};

use commeq::io::{load_report, save_chartable, save_group, CharTableDoc};
use commeq::{build_table, make_group, Provider};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_commeq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn a5_chart_table() {
    let o = run(&["count", "--group", "alternating:5", "--fn", "f3", "--method", "brute", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let expected_rows = "\
rep          rep_order  size  value
()           1          1     1320
(1,2)(3,4)   2          15    24
(1,2,3)      3          20    12
(1,2,3,4,5)  5          12    20
(1,2,3,5,4)  5          12    20
";
    assert!(text.contains(expected_rows), "{text}");
    assert!(text.contains("chi5       5       112"), "{text}");
}

#[test]
fn dihedral_coefficients() {
    let o = run(&["coeffs", "--group", "dihedral:8", "--fn", "f3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("\n60,60,60,60,80,88,80\n"), "{}", stdout(&o));
    let closed = run(&["coeffs", "--group", "dihedral:8", "--fn", "f3", "--method", "closed"]);
    assert_eq!(stdout(&closed), stdout(&o));
}

#[test]
fn csv_and_json_formats() {
    let o = run(&["count", "--group", "dihedral:5", "--fn", "t3", "--method", "character", "--format", "csv"]);
    assert_eq!(stdout(&o), "rep,rep_order,size,value\n1,1,1,220\na,5,2,45\na^2,5,2,45\nb,2,5,0\n");
    let o = run(&["coeffs", "--group", "alternating:5", "--fn", "t3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let coeffs: Vec<&str> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["coefficient"].as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["300", "260", "260", "285", "324"]);
}

#[test]
fn report_round_trip_and_byte_stability() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = [
        "count",
        "--group",
        "symmetric:4",
        "--fn",
        "f3",
        "--format",
        "json",
        "--no-timing",
        "--output",
        path.to_str().unwrap(),
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let saved = std::fs::read_to_string(&path).unwrap();
    assert_eq!(saved, stdout(&first));
    let report = load_report(path.to_str().unwrap()).unwrap();
    assert_eq!(report.to_json(), saved);
    assert_eq!(report.classes[0].value, "504");
}

#[test]
fn group_and_table_files() {
    let dir = tempfile::tempdir().unwrap();
    let group_path = dir.path().join("c4.json");
    save_group(&make_group("cyclic:4").unwrap(), &group_path).unwrap();
    let spec = format!("file:{}", group_path.display());
    let o = run(&["info", "--group", &spec, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 4);
    assert_eq!(v["abelian"], true);

    let s3 = make_group("symmetric:3").unwrap();
    let table_path = dir.path().join("s3.json");
    save_chartable(&build_table(&s3, &Provider::Auto).unwrap(), &table_path).unwrap();
    let provider = format!("file:{}", table_path.display());
    let o = run(&["coeffs", "--group", "symmetric:3", "--fn", "f3", "--table", &provider]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let mut doc = CharTableDoc::from_json(&std::fs::read_to_string(&table_path).unwrap()).unwrap();
    doc.class_sizes[1] += 1;
    std::fs::write(&table_path, doc.to_json()).unwrap();
    let o = run(&["coeffs", "--group", "symmetric:3", "--fn", "f3", "--table", &provider]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("class 1"), "{}", stderr(&o));
}

#[test]
fn exit_codes() {
    let o = run(&["count", "--group", "symmetric:4", "--fn", "f3", "--method", "closed"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dihedral"), "{}", stderr(&o));
    assert_eq!(run(&["count", "--group", "nonsense:3", "--fn", "f3"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--group", "cyclic:3", "--fn", "g3"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--group", "cyclic:3", "--fn", "f3", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let o = run(&["count", "--group", "symmetric:5", "--fn", "f3", "--method", "brute-naive", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("budget"));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_paper_suite_passes() {
    let o = run(&["verify", "--suite", "paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert!(lines.len() >= 8);
    assert!(lines.iter().all(|l| l.starts_with("PASS")), "{text}");
}

#[test]
fn triple_ore_and_bounds() {
    let o = run(&["triple", "--n", "7", "--g", "(1,2)(3,4)(5,6,7)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).matches(" ok\n").count(), 3);
    assert_eq!(run(&["triple", "--n", "4", "--g", "(1,2)"]).status.code(), Some(2));

    let o = run(&["ore", "--group", "symmetric:4", "--k", "4"]);
    assert!(stdout(&o).contains("O_4: 1 of 24 elements"), "{}", stdout(&o));

    let o = run(&["bounds", "--group", "dihedral:4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("P2(1) = 5/8"));
    assert!(!stdout(&o).contains("FAILS"));
}

#[test]
fn dist_and_bench() {
    let o = run(&["dist", "--group", "alternating:5", "--convolve", "2", "--l1"]);
    let text = stdout(&o);
    assert!(text.contains("()           1     11/20"), "{text}");
    assert!(text.contains("2  60       579/1000"), "{text}");

    let o = run(&["bench", "--group", "dihedral:10", "--fn", "f3", "--methods", "brute-naive,brute,character,closed", "--repeat", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("f3(1) = 1280"), "{}", stdout(&o));
    let o = run(&["bench", "--group", "symmetric:3", "--fn", "f3", "--methods", "brute,closed"]);
    assert_eq!(o.status.code(), Some(2));
}
