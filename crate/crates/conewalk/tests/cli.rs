//! End-to-end binary tests: output bytes, exit codes, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const CASES: [&str; 5] = [
    "elliptic-k3-i2",
    "quartic-two-lines",
    "neg6-witness",
    "folded-ade",
    "pell-rank2",
];

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conewalk"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn conewalk")
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn lattice(name: &str) -> String {
    corpus_dir().join(format!("{name}.json")).display().to_string()
}

#[test]
fn corpus_output_matches_golden_bytes() {
    for case in CASES {
        let out = run(&["corpus", "run", case]);
        assert!(out.status.success(), "{case} failed");
        let golden = std::fs::read(corpus_dir().join("golden").join(format!("{case}.json")))
            .expect("golden file");
        assert_eq!(out.stdout, golden, "stale golden bytes for {case}");
    }
}

#[test]
fn corpus_run_all_collects_every_case() {
    let all = run(&["corpus", "run", "--all"]);
    assert!(all.status.success());
    let v: serde_json::Value = serde_json::from_slice(&all.stdout).unwrap();
    for case in CASES {
        let single = run(&["corpus", "run", case]);
        let sv: serde_json::Value = serde_json::from_slice(&single.stdout).unwrap();
        assert_eq!(v[case], sv, "aggregate disagrees for {case}");
    }
}

#[test]
fn corpus_list_names_every_case() {
    let out = run(&["corpus", "list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), CASES.len());
    for (line, case) in text.lines().zip(CASES) {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["name"], case);
        assert!(v["note"].as_str().unwrap().len() > 20);
    }
}

#[test]
fn exit_codes() {
    // 0: success
    assert_eq!(run(&["corpus", "list"]).status.code(), Some(0));
    // 1: domain error, message on stderr
    let bad = run(&["corpus", "run", "nope"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
    let err = String::from_utf8(bad.stderr).unwrap();
    assert!(err.starts_with("error:"), "stderr was: {err}");
    // 2: usage error from the argument parser
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["signature"]).status.code(), Some(2));
}

#[test]
fn signature_compact_and_pretty() {
    let lat = lattice("neg6-witness");
    let compact = run(&["signature", "--lattice", &lat]);
    assert!(compact.status.success());
    assert_eq!(compact.stdout, b"{\"minus\":1,\"plus\":1}\n");
    let pretty = run(&["--pretty", "signature", "--lattice", &lat]);
    assert!(pretty.status.success());
    let v: serde_json::Value = serde_json::from_slice(&pretty.stdout).unwrap();
    assert_eq!(v["plus"], 1);
    assert_eq!(v["minus"], 1);
    assert!(pretty.stdout.contains(&b'\n'));
    assert_ne!(compact.stdout, pretty.stdout);
}

#[test]
fn hunt_line_delimited_and_deterministic() {
    let lat = lattice("elliptic-k3-i2");
    let args = ["hunt", "--lattice", &lat, "--h", "h", "--B", "2", "--M", "5"];
    let first = run(&args);
    assert!(first.status.success());
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    let mut prev_key: Option<(i64, i64)> = None;
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let height: i64 = v["height"].as_str().unwrap().parse().unwrap();
        let square: i64 = v["square"].as_str().unwrap().parse().unwrap();
        assert!(square < 0 && square >= -2);
        assert!((0..=5).contains(&height));
        if let Some(p) = prev_key {
            assert!(p <= (height, square), "output not sorted");
        }
        prev_key = Some((height, square));
    }
    assert!(text.lines().count() > 3);
    // byte-for-byte stable across runs
    assert_eq!(first.stdout, run(&args).stdout);
}

#[test]
fn named_vectors_resolve_in_commands() {
    let lat = lattice("elliptic-k3-i2");
    let out = run(&["pair", "--lattice", &lat, "--u", "alpha", "--v", "alpha"]);
    assert!(out.status.success());
    assert_eq!(out.stdout, b"{\"pair\":\"-2\"}\n");
    // inline coordinates are accepted where names are
    let inline = run(&["pair", "--lattice", &lat, "--u", "1,2,2", "--v", "1,2,2"]);
    assert_eq!(inline.stdout, out.stdout);
}

#[test]
fn corpus_dir_override() {
    // Pointing at a copy of the corpus works; pointing at a bad file fails.
    let tmp = std::env::temp_dir().join("conewalk-cli-test-corpus");
    std::fs::create_dir_all(&tmp).unwrap();
    std::fs::copy(
        corpus_dir().join("neg6-witness.json"),
        tmp.join("neg6-witness.json"),
    )
    .unwrap();
    let ok = bin()
        .args(["corpus", "run", "neg6-witness"])
        .env("CONEWALK_CORPUS_DIR", &tmp)
        .output()
        .unwrap();
    assert!(ok.status.success());
    assert_eq!(
        ok.stdout,
        run(&["corpus", "run", "neg6-witness"]).stdout
    );
    std::fs::write(tmp.join("neg6-witness.json"), b"{ not json").unwrap();
    let bad = bin()
        .args(["corpus", "run", "neg6-witness"])
        .env("CONEWALK_CORPUS_DIR", &tmp)
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&tmp);
}

#[test]
fn rank2_reports_pell_generator() {
    let lat = lattice("pell-rank2");
    let out = run(&["rank2", "--lattice", &lat, "--generator"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rational"], false);
    assert_eq!(v["ray_slopes"][0]["radicand"], "5");
    assert_eq!(v["generator"][0][0], "1");
}
