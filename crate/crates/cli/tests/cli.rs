use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gauss-renyi"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_doc(dir: &Path, name: &str, modes: usize, rows: &[Vec<f64>]) -> PathBuf {
    let path = dir.join(name);
    let doc = serde_json::json!({ "modes": modes, "ordering": "q1p1", "matrix": rows });
    fs::write(&path, doc.to_string()).unwrap();
    path
}

fn tmss_rows(a: f64) -> Vec<Vec<f64>> {
    let c = (a * a - 1.0).sqrt();
    vec![vec![a, 0.0, c, 0.0], vec![0.0, a, 0.0, -c], vec![c, 0.0, a, 0.0], vec![0.0, -c, 0.0, a]]
}

fn diag(d: &[f64]) -> Vec<Vec<f64>> {
    (0..d.len()).map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0.0 }).collect()).collect()
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let vac = write_doc(dir.path(), "vac.json", 1, &diag(&[1.0, 1.0]));
    let o = run(&["validate", vac.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("physical: true, nu_min: 1.0"));

    let half = write_doc(dir.path(), "half.json", 1, &diag(&[0.5, 0.5]));
    assert_eq!(code(&run(&["validate", half.to_str().unwrap()])), 1);

    let odd = write_doc(dir.path(), "odd.json", 1, &diag(&[1.0, 1.0, 1.0]));
    assert_eq!(code(&run(&["validate", odd.to_str().unwrap()])), 2);

    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "not json").unwrap();
    assert_eq!(code(&run(&["validate", garbage.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["validate", "/nonexistent/cm.json"])), 2);
}

#[test]
fn foreign_ordering_is_rejected() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("qqpp.json");
    fs::write(&path, r#"{"modes":1,"ordering":"qqpp","matrix":[[1,0],[0,1]]}"#).unwrap();
    assert_eq!(code(&run(&["validate", path.to_str().unwrap()])), 2);
}

#[test]
fn measure_values() {
    let dir = TempDir::new().unwrap();
    let tmss = write_doc(dir.path(), "tmss.json", 2, &tmss_rows(5.0 / 3.0));
    let t = tmss.to_str().unwrap();
    let o = run(&["measure", t, "--measure", "entanglement"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("0.510825623766"));

    let o = run(&["measure", t, "--measure", "mutual", "--partition", "0;1"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 2.0 * (5.0_f64 / 3.0).ln()).abs() < 1e-10);

    let prod = write_doc(dir.path(), "prod.json", 2, &diag(&[2.0, 2.0, 3.0, 3.0]));
    let o = run(&["measure", prod.to_str().unwrap(), "--measure", "discord"]);
    assert_eq!(stdout(&o).lines().next(), Some("0.000000000000"));

    let o = run(&["measure", t, "--measure", "classical", "--numeric"]);
    assert_eq!(stdout(&o).lines().next(), Some("0.510825623766"));
    assert!(stdout(&o).contains("witness: lambda:"));

    let o = run(&["measure", t, "--measure", "renyi2", "--partition", "0;1"]);
    assert_eq!(stdout(&o).trim(), "0.510825623766");
}

#[test]
fn measure_errors() {
    let dir = TempDir::new().unwrap();
    let tmss = write_doc(dir.path(), "tmss.json", 2, &tmss_rows(2.0));
    let t = tmss.to_str().unwrap();
    assert_eq!(code(&run(&["measure", t, "--measure", "mutual", "--partition", "0;7"])), 2);
    assert_eq!(code(&run(&["measure", t, "--measure", "mutual", "--partition", "0,1"])), 2);
    assert_eq!(code(&run(&["measure", t, "--measure", "bogus"])), 2);
    let bad = write_doc(dir.path(), "bad.json", 2, &diag(&[0.5, 0.5, 1.0, 1.0]));
    assert_eq!(code(&run(&["measure", bad.to_str().unwrap(), "--measure", "renyi2"])), 1);
    let mixed3 = write_doc(dir.path(), "mixed3.json", 3, &diag(&[2.0; 6]));
    let o = run(&["measure", mixed3.to_str().unwrap(), "--measure", "entanglement", "--partition", "0;1,2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn tripartite_table() {
    let o = run(&["tripartite", "--a1", "2", "--a2", "2", "--a3", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.matches("0.463545833215").count(), 3 * 2 + 1);
    assert!(text.contains("fully_inseparable: true"));

    let o = run(&["tripartite", "--a1", "1", "--a2", "1", "--a3", "1"]);
    let text = stdout(&o);
    for row in text.lines().skip(1).take(3) {
        assert!(row.split_whitespace().skip(1).all(|x| x == "0.000000000000"), "{row}");
    }

    let o = run(&["tripartite", "--a1", "3", "--a2", "2", "--a3", "2.02"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("fully_inseparable: false"));
    assert!(text.contains("(1,2) separable"));
    assert!(text.contains("invariant_residual: n/a"));

    assert_eq!(code(&run(&["tripartite", "--a1", "3", "--a2", "1.5", "--a3", "1.5"])), 2);
    assert_eq!(code(&run(&["tripartite", "--a1", "2", "--a2", "2", "--a3", "2", "--focus", "5"])), 2);
    let o = run(&["tripartite", "--a1", "2", "--a2", "2", "--a3", "2", "--focus", "1"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with('1')).count(), 1);
}

#[test]
fn random_is_deterministic_and_valid() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = run(&["random", "--modes", "3", "--seed", "42", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(code(&run(&["validate", a.to_str().unwrap()])), 0);

    let o = run(&["random", "--modes", "2", "--pure", "--seed", "7"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows: Vec<Vec<f64>> = serde_json::from_value(doc["matrix"].clone()).unwrap();
    let m = nalgebra::DMatrix::from_fn(4, 4, |i, j| rows[i][j]);
    assert!((m.determinant() - 1.0).abs() < 1e-9);

    assert_eq!(code(&run(&["random", "--modes", "0"])), 2);
    assert_eq!(code(&run(&["random", "--modes", "2", "--temp-cap", "0.5"])), 2);
}

#[test]
fn verify_reports() {
    let o = run(&["verify", "--suite", "ssa", "--trials", "200"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["suite"], "ssa");
    assert_eq!(report["failures"], 0);

    // a zero tolerance turns roundoff in an equality into failures
    let o = run(&["verify", "--suite", "kw", "--trials", "20", "--tol", "0"]);
    assert_eq!(code(&o), 3);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["failures"].as_u64().unwrap() > 0);

    assert_eq!(code(&run(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "je", "--trials", "0"])), 2);
}

#[test]
fn worst_seed_reproduces() {
    let o = run(&["verify", "--suite", "je", "--trials", "50", "--seed", "1000"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let seed = report["worst_seed"].as_u64().unwrap().to_string();
    let again = run(&["verify", "--suite", "je", "--trials", "1", "--seed", &seed]);
    let single: serde_json::Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(single["worst_value"], report["worst_value"]);
}

#[test]
fn sweeps() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("tmss.csv");
    let o = run(&[
        "sweep", "--family", "tmss", "--param-range", "0:1:0.1", "--measures", "renyi2_A,entanglement", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(!text.contains('\r'));
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["param", "renyi2_A", "entanglement"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 11);
    for r in &rows {
        assert_eq!(r[1], r[2]);
    }

    let o = run(&["sweep", "--family", "ghz", "--param-range", "1.1:3:0.1", "--measures", "residual"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 21);

    let o = run(&[
        "sweep", "--family", "squeezed-thermal", "--param-range", "0:1.5:0.05", "--measures", "discord,discord_BA",
    ]);
    for line in stdout(&o).lines().skip(1) {
        assert!(line.split(',').skip(1).all(|x| x.parse::<f64>().unwrap() >= 0.0), "{line}");
    }

    assert_eq!(code(&run(&["sweep", "--family", "nope", "--param-range", "0:1:0.1", "--measures", "renyi2"])), 2);
    assert_eq!(code(&run(&["sweep", "--family", "tmss", "--param-range", "1:0:0.1", "--measures", "renyi2"])), 2);
    assert_eq!(code(&run(&["sweep", "--family", "ghz", "--param-range", "1:2:0.5", "--measures", "discord"])), 2);
}
