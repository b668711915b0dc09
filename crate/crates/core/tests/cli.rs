use std::process::{Command, Output};

use gfspx::circuit::{from_json, from_qasm};
use gfspx::synth::Component;

const BIN: &str = env!("CARGO_BIN_EXE_gfspx");
const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/golden_vectors.txt");
const SCHEMA: &str = include_str!("../schema/report.schema.json");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("GFSPX_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn assert_schema_valid(text: &str) {
    let schema: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn encrypt_decrypt_round_trip() {
    let key = "00112233445566778899aabbccddeeff";
    let ct = ok(&["encrypt", key, "0123456789abcdef"]);
    assert_eq!(ct, "9d83da820491a80f\n");
    assert_eq!(ok(&["decrypt", key, ct.trim()]), "0123456789abcdef\n");
    let zero = "0".repeat(32);
    assert_eq!(
        ok(&["encrypt", &zero, "0000000000000000"]),
        "611e7ef17ee570c0\n"
    );
}

#[test]
fn malformed_input_is_a_usage_error() {
    for args in [
        vec!["encrypt", "abc", "0000000000000000"],
        vec!["encrypt", &"g".repeat(32), "0000000000000000"],
        vec!["decrypt", "00000000000000000000000000000000", "00"],
        vec!["synth", "nonsense"],
        vec!["report", "gfspx", "--depth-mode", "fast"],
        vec!["grover", "--r", "4"],
        vec!["bogus"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn synth_prints_histograms() {
    assert!(ok(&["synth", "gfspx"]).contains("NOT 2516 / CNOT 11310 / CCNOT 3112 / SWAP 5097"));
    assert!(ok(&["synth", "adder"]).contains("NOT 26 / CNOT 73 / CCNOT 29 / SWAP 0"));
    assert!(ok(&["synth", "oracle:r=2"]).contains("qubits 419"));
}

#[test]
fn exports_reimport_identically() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["f2", "round:3", "gfspx"] {
        let want = name.parse::<Component>().unwrap().build().unwrap();
        for fmt in ["json", "qasm"] {
            let path = dir.path().join(format!("c.{fmt}"));
            ok(&["synth", name, "--export", fmt, "-o", path.to_str().unwrap()]);
            let text = std::fs::read_to_string(&path).unwrap();
            let got = if fmt == "json" {
                from_json(&text)
            } else {
                from_qasm(&text)
            }
            .unwrap();
            assert_eq!(got, want, "{name} via {fmt}");
        }
    }
}

#[test]
fn verify_suites() {
    assert!(ok(&["verify", "sbox"]).contains("16 cases, 16 passed, 0 failed"));
    assert!(
        ok(&["verify", "gfspx", "--samples", "1000"]).contains("1000 cases, 1000 passed, 0 failed")
    );
    assert!(ok(&["verify", "oracle:r=2", "--samples", "64"]).contains("65 passed"));
}

#[test]
fn seeds_are_recorded_and_reproducible() {
    let a = ok(&[
        "verify",
        "round:4",
        "--samples",
        "50",
        "--seed",
        "77",
        "--format",
        "json",
    ]);
    let b = ok(&[
        "verify",
        "round:4",
        "--samples",
        "50",
        "--seed",
        "77",
        "--format",
        "json",
    ]);
    assert_eq!(a, b);
    assert!(a.contains("\"seed\": 77"));
    let o = Command::new(BIN)
        .args(["verify", "f1", "--samples", "5"])
        .env("GFSPX_SEED", "4242")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("seed 4242"));
}

#[test]
fn vector_file_check() {
    assert!(ok(&["verify", "--check", FIXTURE]).contains("64 vectors, 64 passed, 0 failed"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    let text = std::fs::read_to_string(FIXTURE).unwrap().replacen(
        "611e7ef17ee570c0",
        "611e7ef17ee570c1",
        1,
    );
    std::fs::write(&bad, text).unwrap();
    let o = run(&["verify", "--check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("1 failed"));
    let garbled = dir.path().join("garbled.txt");
    std::fs::write(&garbled, "zz 00 11\n").unwrap();
    assert_eq!(
        run(&["verify", "--check", garbled.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn report_and_grover_rows() {
    let r = ok(&["report", "gfspx", "--depth-mode", "paper"]);
    assert!(r.contains("32498") && r.contains("47789"), "{r}");
    assert!(r.contains("depth: paper"));
    assert!(ok(&["grover", "--r", "3"]).contains("qubits 628"));
    let md = ok(&["grover", "--r", "3", "--maxdepth"]);
    for line in ["2^40: 2^119", "2^64: 2^95", "2^96: 2^63"] {
        assert!(md.contains(line), "{md}");
    }
    let cmp = ok(&["grover", "--r", "2", "--compare-paper"]);
    assert!(cmp.contains("published comparison") && cmp.contains("PRESENT-64/128"));
    assert!(cmp.contains("T per iteration = 7*CCNOT + sum(32t-84)"));
}

#[test]
fn grover_reads_pair_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pairs.txt");
    let key = 0x0011_2233_4455_6677_8899_aabb_ccdd_eeffu128;
    let lines: String = [1u64, 2]
        .iter()
        .map(|&p| format!("{p:016x} {:016x}\n", gfspx::cipher::encrypt(p, key)))
        .collect();
    std::fs::write(&path, format!("# plaintext ciphertext\n{lines}")).unwrap();
    let out = ok(&[
        "grover",
        "--r",
        "2",
        "--pairs",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.contains("\"seed\": null"));
    assert_eq!(
        run(&["grover", "--r", "3", "--pairs", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn json_output_matches_schema() {
    assert_schema_valid(&ok(&["report", "--format", "json", "--compare-paper"]));
    assert_schema_valid(&ok(&[
        "report",
        "sbox",
        "oracle:r=2",
        "--format",
        "json",
        "--depth-mode",
        "uniform1",
    ]));
    assert_schema_valid(&ok(&[
        "verify",
        "f2",
        "--samples",
        "20",
        "--format",
        "json",
    ]));
    assert_schema_valid(&ok(&["verify", "--check", FIXTURE, "--format", "json"]));
    assert_schema_valid(&ok(&[
        "grover",
        "--r",
        "2",
        "--format",
        "json",
        "--compare-paper",
    ]));
    assert_schema_valid(&ok(&[
        "grover",
        "--r",
        "3",
        "--format",
        "json",
        "--swap-mode",
        "three-cnot",
    ]));
    let schema: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    assert!(!validator.is_valid(&serde_json::json!({"kind": "verify", "component": "sbox"})));
}

#[test]
fn csv_output_carries_convention() {
    let csv = ok(&["report", "f1", "--format", "csv", "--compare-paper"]);
    assert!(csv.starts_with("# depth convention: paper"));
    assert!(csv.lines().any(|l| l.starts_with("published,f1,")));
    let g = ok(&["grover", "--r", "2", "--format", "csv"]);
    assert!(g.lines().any(|l| l.starts_with("maxdepth_40,118")));
}
