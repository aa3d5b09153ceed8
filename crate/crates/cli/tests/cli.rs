use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/examples").join(name)
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_snarkpipe")).current_dir(dir).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn colors(dir: &Path, file: &str, c: [u8; 5]) {
    let body: Vec<String> = (0..5).map(|i| format!("\"c{}\": \"{}\"", i + 1, c[i])).collect();
    fs::write(dir.join(file), format!("{{{}}}", body.join(", "))).unwrap();
}

/// compile, setup and prove coloring5 in `dir`.
fn pipeline(dir: &Path, seed: &str) {
    let src = example("coloring5.zkp");
    let out = run(dir, &["compile", src.to_str().unwrap(), "--emit-qap", "qap.json"]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("gates (N): 67"));
    assert_eq!(code(&run(dir, &["--seed", seed, "setup"])), 0);
    colors(dir, "inputs.json", [3, 1, 2, 1, 2]);
    let out = run(dir, &["prove", "--inputs", "inputs.json"]);
    assert_eq!(code(&out), 0, "{out:?}");
}

#[test]
fn coloring_pipeline_accepts() {
    let dir = TempDir::new().unwrap();
    pipeline(dir.path(), "c0ffee");
    let out = run(dir.path(), &["verify"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("checks: div=pass span=pass coeff=pass"));

    let circuit: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("circuit.json")).unwrap()).unwrap();
    let rels: Vec<&str> = circuit["outputs"].as_array().unwrap().iter().map(|o| o["rel"].as_str().unwrap()).collect();
    assert_eq!(rels, ["neq0", "eq0"]);
}

#[test]
fn improper_coloring_is_an_invalid_witness() {
    let dir = TempDir::new().unwrap();
    pipeline(dir.path(), "01");
    colors(dir.path(), "bad.json", [1, 1, 2, 1, 2]);
    let out = run(dir.path(), &["prove", "--inputs", "bad.json", "-o", "bad_key.json"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not satisfy"));
    assert!(!dir.path().join("bad_key.json").exists());
}

#[test]
fn flipped_digit_in_proof_is_rejected() {
    let dir = TempDir::new().unwrap();
    pipeline(dir.path(), "02");
    let path = dir.path().join("witness_key.json");
    let text = fs::read_to_string(&path).unwrap();
    let start = text.find("\"elements\"").unwrap();
    for offset in [0usize, 1, 2] {
        let mut bytes = text.clone().into_bytes();
        // first digit of the element list, then later ones
        let pos =
            bytes[start..].iter().enumerate().filter(|(_, b)| b.is_ascii_digit()).nth(offset * 20).unwrap().0 + start;
        bytes[pos] = if bytes[pos] == b'1' { b'2' } else { b'1' };
        fs::write(&path, &bytes).unwrap();
        let out = run(dir.path(), &["verify"]);
        assert_eq!(code(&out), 2, "{}", stdout(&out));
    }
}

#[test]
fn outputs_are_deterministic() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    pipeline(a.path(), "abcd");
    pipeline(b.path(), "abcd");
    for f in ["circuit.json", "qap.json", "evaluation_key.json", "verification_key.json", "witness_key.json"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
    let c = TempDir::new().unwrap();
    pipeline(c.path(), "abce");
    assert_ne!(
        fs::read(a.path().join("evaluation_key.json")).unwrap(),
        fs::read(c.path().join("evaluation_key.json")).unwrap()
    );
}

#[test]
fn compile_reports_syntax_errors_with_position() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("broken.zkp"), "inputs x;\ny := x * ;\n").unwrap();
    let out = run(dir.path(), &["compile", "broken.zkp"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.zkp:2:10"), "{out:?}");

    fs::write(dir.path().join("one.zkp"), "inputs a, b;\nc := a*b;\nassert c == 0;\n").unwrap();
    let out = run(dir.path(), &["compile", "one.zkp"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("gates (N): 1"));
}

#[test]
fn modular_backend_and_missing_files_are_input_errors() {
    let dir = TempDir::new().unwrap();
    let src = example("cubic.zkp");
    assert_eq!(code(&run(dir.path(), &["compile", src.to_str().unwrap()])), 0);
    let out = run(dir.path(), &["--backend", "modular", "setup"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("pairing"));
    assert_eq!(code(&run(dir.path(), &["verify"])), 1);
    assert_eq!(code(&run(dir.path(), &["--field", "100", "compile", src.to_str().unwrap()])), 1);
    assert_eq!(code(&run(dir.path(), &["--seed", "xyz", "setup"])), 1);
}

#[test]
fn keys_from_another_backend_are_refused() {
    let dir = TempDir::new().unwrap();
    pipeline(dir.path(), "03");
    let out = run(dir.path(), &["--backend", "modular", "prove", "--inputs", "inputs.json"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("backend"));
}

#[test]
fn public_symbols_are_supplied_to_verify() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    fs::write(p.join("prod.zkp"), "inputs x, y;\nout := x*y;\nassert out != 0;\n").unwrap();
    assert_eq!(code(&run(p, &["compile", "prod.zkp"])), 0);
    assert_eq!(code(&run(p, &["--seed", "05", "setup", "--public", "out"])), 0);
    fs::write(p.join("in.json"), r#"{"x": "6", "y": 7}"#).unwrap();
    assert_eq!(code(&run(p, &["prove", "--inputs", "in.json"])), 0);
    fs::write(p.join("pub.json"), r#"{"out": "42"}"#).unwrap();
    assert_eq!(code(&run(p, &["verify", "--public-inputs", "pub.json"])), 0);
    fs::write(p.join("pub.json"), r#"{"out": "41"}"#).unwrap();
    assert_eq!(code(&run(p, &["verify", "--public-inputs", "pub.json"])), 2);
    assert_eq!(code(&run(p, &["verify"])), 1);
}

#[test]
fn interactive_sessions() {
    let dir = TempDir::new().unwrap();
    let k3 = example("k3.json");
    let out = run(dir.path(), &["--seed", "07", "interactive", "--problem", k3.to_str().unwrap(), "--rounds", "10"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("accept"));
    let transcript: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("transcript.json")).unwrap()).unwrap();
    assert_eq!(transcript["transcript"].as_array().unwrap().len(), 10);

    let path4 = example("path4.json");
    let out = run(dir.path(), &["interactive", "--problem", path4.to_str().unwrap()]);
    assert_eq!(code(&out), 1, "honest mode needs a solution");
    let out = run(
        dir.path(),
        &["interactive", "--problem", path4.to_str().unwrap(), "--cheat", "--rounds", "1", "--repeat", "10000"],
    );
    assert_eq!(code(&out), 0);
    let line = stdout(&out);
    let accepted: f64 = line.split_whitespace().nth(1).unwrap().split('/').next().unwrap().parse().unwrap();
    assert!((accepted / 10000.0 - 0.5).abs() < 0.02, "{line}");
    let out = run(dir.path(), &["interactive", "--problem", path4.to_str().unwrap(), "--cheat", "--rounds", "12"]);
    assert_eq!(code(&out), 2);

    fs::write(dir.path().join("junk.json"), "{\"type\": \"hamiltonian_cycle\"}").unwrap();
    assert_eq!(code(&run(dir.path(), &["interactive", "--problem", "junk.json"])), 1);
}

#[test]
fn selftest_passes() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["selftest"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}
