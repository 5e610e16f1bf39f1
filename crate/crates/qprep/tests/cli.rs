use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qprep::gatelist::parse_gate_list;
use serde_json::{json, Value};
use tempfile::TempDir;

fn qprep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qprep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn vector_file(dir: &TempDir, magnitudes: &[f64]) -> PathBuf {
    let n = magnitudes.len().trailing_zeros();
    let entries: Vec<Value> = magnitudes
        .iter()
        .map(|&m| json!({"magnitude": m, "phase": 0.0}))
        .collect();
    write(
        dir,
        "x.json",
        &json!({"n": n, "entries": entries}).to_string(),
    )
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn synth_diag_golden_single_gate() {
    let dir = TempDir::new().unwrap();
    let phases = write(
        &dir,
        "p.json",
        &format!("[0, 0, 0, {}]", std::f64::consts::PI),
    );
    let out = qprep(&["synth-diag", s(&phases), "--m", "1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let golden = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/czp_pi.gates"),
    )
    .unwrap();
    assert_eq!(stdout(&out), golden);
    assert!(stderr(&out).contains("reconstruction=exact"));
}

#[test]
fn synth_diag_all_zero_is_empty() {
    let dir = TempDir::new().unwrap();
    let phases = write(
        &dir,
        "p.csv",
        "index,phase\n0,0\n1,0\n2,0\n3,0\n4,0\n5,0\n6,0\n7,0\n",
    );
    let emit = dir.path().join("g.txt");
    let out = qprep(&["synth-diag", s(&phases), "--m", "3", "--emit", s(&emit)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let list = parse_gate_list(&std::fs::read_to_string(&emit).unwrap()).unwrap();
    assert_eq!(list.n, 3);
    assert!(list.gates.is_empty());
    assert!(stdout(&out).contains("gates=0"));
}

#[test]
fn synth_diag_random_within_bound() {
    let dir = TempDir::new().unwrap();
    let phases: Vec<f64> = (0..16).map(|i| (i * 7 % 16) as f64 * 0.39).collect();
    let path = write(&dir, "p.json", &json!({ "phases": phases }).to_string());
    let emit = dir.path().join("g.txt");
    for sparse in [false, true] {
        let mut args = vec!["synth-diag", s(&path), "--m", "3", "--emit", s(&emit)];
        if sparse {
            args.push("--sparse");
        }
        let out = qprep(&args);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        assert!(stdout(&out).contains("reconstruction=exact"));
        if !sparse {
            let list = parse_gate_list(&std::fs::read_to_string(&emit).unwrap()).unwrap();
            let czp = list
                .gates
                .iter()
                .filter(|g| matches!(g, qprep_core::sim::Gate::ControlledZPow { .. }))
                .count();
            assert!(czp <= 45, "{czp}");
            assert!(stdout(&out).contains("bound=45"));
        }
    }
}

#[test]
fn synth_diag_rejects_bad_level_and_phases() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "p.json", "[0, 1, 2, 3]");
    assert_eq!(code(&qprep(&["synth-diag", s(&good), "--m", "0"])), 1);
    let bad = write(&dir, "q.json", "[0, 1, 7, 3]");
    let out = qprep(&["synth-diag", s(&bad), "--m", "2"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("entry 2"), "{}", stderr(&out));
}

#[test]
fn prepare_uniform_probabilistic_succeeds_surely() {
    let dir = TempDir::new().unwrap();
    let x = vector_file(&dir, &[0.5; 4]);
    let rep = dir.path().join("r.json");
    let out = qprep(&[
        "prepare",
        s(&x),
        "--mode",
        "prob",
        "--epsilon",
        "0.5",
        "--report",
        s(&rep),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = report(&rep);
    assert!((r["success_probability"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(r["satisfied"], true);
    assert!(r["overlap_fidelity"].as_f64().is_some());
}

#[test]
fn prepare_basis_vector_exact() {
    let dir = TempDir::new().unwrap();
    let x = vector_file(&dir, &[1.0, 0.0, 0.0, 0.0]);
    let rep = dir.path().join("r.json");
    let out = qprep(&[
        "prepare",
        s(&x),
        "--mode",
        "det",
        "--epsilon",
        "0.1",
        "--report",
        s(&rep),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(report(&rep)["measured_distance"].as_f64().unwrap() < 1e-12);
}

#[test]
fn prepare_eight_entries_within_epsilon() {
    let dir = TempDir::new().unwrap();
    let x = write(
        &dir,
        "x.csv",
        "index,magnitude,phase\n0,0.3,0.1\n1,0.8,2.0\n2,0.1,4.0\n3,0.5,0\n4,0.9,6.2\n5,0.2,1.1\n6,0.4,3.3\n7,0.7,5.0\n",
    );
    let rep = dir.path().join("r.json");
    let emit = dir.path().join("g.txt");
    let out = qprep(&[
        "prepare",
        s(&x),
        "--mode",
        "det",
        "--epsilon",
        "0.1",
        "--report",
        s(&rep),
        "--emit",
        s(&emit),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = report(&rep);
    assert!(r["measured_distance"].as_f64().unwrap() <= 0.1);
    assert_eq!(r["amplitudes"].as_array().unwrap().len(), 8);
    let list = parse_gate_list(&std::fs::read_to_string(&emit).unwrap()).unwrap();
    assert_eq!(list.n, 3);
    assert_eq!(
        list.num_qubits,
        r["qubits"]["total"].as_u64().unwrap() as usize
    );
}

#[test]
fn prepare_fast_path_matches_full_circuit() {
    let dir = TempDir::new().unwrap();
    let full = dir.path().join("full.json");
    let fast = dir.path().join("fast.json");
    let base = [
        "prepare",
        "--random",
        "3",
        "--mode",
        "prob",
        "--t",
        "6",
        "--t-prime",
        "8",
        "--seed",
        "4",
    ];
    let mut a = base.to_vec();
    a.extend(["--report", s(&full)]);
    let mut b = base.to_vec();
    b.extend(["--fast-path", "--report", s(&fast)]);
    assert_eq!(code(&qprep(&a)), 0);
    assert_eq!(code(&qprep(&b)), 0);
    let (x, y) = (report(&full), report(&fast));
    for (p, q) in x["amplitudes"]
        .as_array()
        .unwrap()
        .iter()
        .zip(y["amplitudes"].as_array().unwrap())
    {
        for k in 0..2 {
            assert!((p[k].as_f64().unwrap() - q[k].as_f64().unwrap()).abs() < 1e-9);
        }
    }
}

#[test]
fn prepare_malformed_input_names_entry() {
    let dir = TempDir::new().unwrap();
    let x = write(
        &dir,
        "x.json",
        r#"{"n": 1, "entries": [{"magnitude": 1, "phase": 0}, {"magnitude": -2, "phase": 0}]}"#,
    );
    let out = qprep(&["prepare", s(&x), "--mode", "det", "--epsilon", "0.1"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("entry 1"), "{}", stderr(&out));

    let short = write(
        &dir,
        "y.json",
        r#"{"n": 2, "entries": [{"magnitude": 1, "phase": 0}]}"#,
    );
    assert_eq!(
        code(&qprep(&[
            "prepare",
            s(&short),
            "--mode",
            "det",
            "--epsilon",
            "0.1"
        ])),
        1
    );
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&qprep(&[])), 1);
    assert_eq!(
        code(&qprep(&["prepare", "--random", "2", "--mode", "det"])),
        1
    );
    assert_eq!(
        code(&qprep(&[
            "prepare",
            "--random",
            "2",
            "--mode",
            "det",
            "--epsilon",
            "0.1",
            "--t",
            "4",
            "--t-prime",
            "4"
        ])),
        1
    );
    assert_eq!(code(&qprep(&["simulate", "/nonexistent/gates.txt"])), 1);
    assert_eq!(code(&qprep(&["--help"])), 0);
}

#[test]
fn simulate_rejects_bad_gate_list() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "g.txt",
        "# qprep v1 n=2 qubits=2\nH q=0\nCZP l=1 q=0,5\n",
    );
    let out = qprep(&["simulate", s(&g)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn verify_synth_exhaustive() {
    let out = qprep(&["verify", "--suite", "synth", "--n", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(
        stdout(&out).contains("cells=256 satisfied=256"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn verify_dualpath_and_bounds() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("d.csv");
    let out = qprep(&[
        "verify",
        "--suite",
        "dualpath",
        "--n",
        "2",
        "--trials",
        "20",
        "--out",
        s(&csv),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        std::fs::read_to_string(&csv).unwrap().lines().count(),
        1 + 20 * 6
    );

    let json_out = dir.path().join("b.json");
    let out = qprep(&[
        "verify",
        "--suite",
        "bounds",
        "--n",
        "3",
        "--trials",
        "50",
        "--out",
        s(&json_out),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(report(&json_out).as_array().unwrap().len(), 50 * 7);
}

#[test]
fn fixed_seed_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let runs: Vec<(Vec<u8>, Vec<u8>)> = (0..2)
        .map(|k| {
            let g = dir.path().join(format!("g{k}"));
            let r = dir.path().join(format!("r{k}"));
            let out = qprep(&[
                "prepare",
                "--random",
                "2",
                "--mode",
                "det",
                "--epsilon",
                "0.5",
                "--seed",
                "9",
                "--emit",
                s(&g),
                "--report",
                s(&r),
            ]);
            assert_eq!(code(&out), 0);
            (std::fs::read(&g).unwrap(), std::fs::read(&r).unwrap())
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let a = qprep(&[
        "verify", "--suite", "dualpath", "--n", "2", "--trials", "3", "--seed", "5",
    ]);
    let b = qprep(&[
        "verify", "--suite", "dualpath", "--n", "2", "--trials", "3", "--seed", "5",
    ]);
    assert_eq!(a.stdout, b.stdout);
}
