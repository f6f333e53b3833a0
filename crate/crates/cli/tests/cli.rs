//! End-to-end checks of the `movebwt` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn movebwt(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_movebwt"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str], dir: &Path) -> String {
    let out = movebwt(args, dir);
    assert!(
        out.status.success(),
        "movebwt {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout is valid utf8")
}

fn setup(dir: &Path) {
    fs::write(dir.join("text.txt"), "GATTAGATACAT\n").unwrap();
    fs::write(dir.join("patterns.txt"), "AT\nGA\nTAG\n").unwrap();
    ok(&["build", "--input", "text.txt", "--index", "text.mvtb"], dir);
}

#[test]
fn build_reports_text_statistics() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("text.txt"), "GATTAGATACAT\n").unwrap();
    let out = ok(&["build", "--input", "text.txt", "--index", "text.mvtb"], dir.path());
    assert!(out.contains("n = 13"), "{out}");
    assert!(out.contains("r = 8"), "{out}");
    assert!(out.contains("rows = 8"), "{out}");
    assert!(out.contains("bytes = "), "{out}");
    assert!(dir.path().join("text.mvtb").exists());
}

#[test]
fn count_matches_known_occurrences() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    let out = ok(&["count", "--index", "text.mvtb", "--patterns", "patterns.txt"], dir.path());
    assert_eq!(out, "3\n2\n1\n");
}

#[test]
fn count_empty_pattern_file_prints_nothing() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    fs::write(dir.path().join("empty.txt"), "").unwrap();
    let out = ok(&["count", "--index", "text.mvtb", "--patterns", "empty.txt"], dir.path());
    assert_eq!(out, "");
}

#[test]
fn count_handles_blank_lines_and_foreign_bytes() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    fs::write(dir.path().join("mixed.txt"), "AT\n\nzz\nA\n").unwrap();
    let out = ok(&["count", "--index", "text.mvtb", "--patterns", "mixed.txt"], dir.path());
    assert_eq!(out, "3\n0\n0\n5\n");
}

#[test]
fn invert_round_trips_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    let out = ok(&["invert", "--index", "text.mvtb"], dir.path());
    assert_eq!(out, "GATTAGATACAT");
}

#[test]
fn invert_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    ok(&["invert", "--index", "text.mvtb", "--output", "out.txt"], dir.path());
    assert_eq!(fs::read(dir.path().join("out.txt")).unwrap(), b"GATTAGATACAT");
}

#[test]
fn stats_emits_histogram_csv() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path());
    let out = ok(&["stats", "--index", "text.mvtb", "--patterns", "patterns.txt"], dir.path());
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("scan_length,frequency,percent"));
    let mut percent_total = 0.0;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3, "{line}");
        fields[0].parse::<usize>().unwrap();
        fields[1].parse::<u64>().unwrap();
        percent_total += fields[2].parse::<f64>().unwrap();
    }
    assert!((percent_total - 100.0).abs() < 0.1, "percents sum to {percent_total}");
}

#[test]
fn backends_and_splits_answer_alike() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("text.txt"), "GATTAGATACATGATTAGATACATTAGA\n").unwrap();
    fs::write(dir.path().join("patterns.txt"), "AT\nGA\nTAG\nGATTA\nCATG\nTT\n").unwrap();
    let variants: &[&[&str]] = &[
        &["--backend", "uncompressed"],
        &["--dest-encoding", "bv"],
        &["--dest-encoding", "dac", "--dac-rate", "3"],
        &["--dest-encoding", "interp", "--interp-rate", "4"],
        &["--split-factor", "1.5"],
        &["--balance", "2", "--backend", "uncompressed"],
        &["--balance", "3", "--block-size", "4"],
    ];
    let mut outputs = Vec::new();
    for (i, extra) in variants.iter().enumerate() {
        let idx = format!("v{i}.mvtb");
        let mut args = vec!["build", "--input", "text.txt", "--index", &idx];
        args.extend_from_slice(extra);
        ok(&args, dir.path());
        outputs.push(ok(&["count", "--index", &idx, "--patterns", "patterns.txt"], dir.path()));
    }
    for out in &outputs[1..] {
        assert_eq!(out, &outputs[0]);
    }
}

#[test]
fn fasta_input_is_concatenated() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("seq.fa"), ">one\nGATTAG\n>two\nATA\nCAT\n").unwrap();
    let out =
        ok(&["build", "--input", "seq.fa", "--fasta", "--index", "seq.mvtb"], dir.path());
    assert!(out.contains("n = 13"), "{out}");
    assert!(out.contains("r = 8"), "{out}");
    assert_eq!(ok(&["invert", "--index", "seq.mvtb"], dir.path()), "GATTAGATACAT");
}

#[test]
fn bench_emits_backend_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(
        &[
            "bench",
            "--base-len",
            "2000",
            "--copies",
            "4",
            "--pattern-count",
            "50",
            "--pattern-len",
            "8",
        ],
        dir.path(),
    );
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "backend,build_ms,index_bytes,lf_ns,count_ns");
    assert_eq!(lines.len(), 6);
    let backends: Vec<&str> = lines[1..].iter().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(
        backends,
        ["baseline-binsearch", "moves", "blocked-bv", "blocked-dac", "blocked-interp"]
    );
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 5, "{line}");
        fields[1].parse::<f64>().unwrap();
        fields[2].parse::<u64>().unwrap();
        fields[3].parse::<f64>().unwrap();
        if fields[0] == "baseline-binsearch" {
            assert_eq!(fields[4], "", "the baseline cannot answer count queries");
        } else {
            fields[4].parse::<f64>().unwrap();
        }
    }
}

#[test]
fn conflicting_split_flags_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("text.txt"), "GATTAGATACAT\n").unwrap();
    let out = movebwt(
        &[
            "build",
            "--input",
            "text.txt",
            "--index",
            "x.mvtb",
            "--split-factor",
            "2",
            "--balance",
            "2",
        ],
        dir.path(),
    );
    assert!(!out.status.success());
}

#[test]
fn balance_below_two_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("text.txt"), "GATTAGATACAT\n").unwrap();
    let out = movebwt(
        &["build", "--input", "text.txt", "--index", "x.mvtb", "--balance", "1"],
        dir.path(),
    );
    assert!(!out.status.success());
}

#[test]
fn missing_files_give_one_line_errors() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["count", "--index", "nope.mvtb", "--patterns", "nope.txt"] as &[&str],
        &["build", "--input", "nope.txt", "--index", "x.mvtb"],
    ] {
        let out = movebwt(args, dir.path());
        assert_eq!(out.status.code(), Some(1));
        let stderr = String::from_utf8(out.stderr).unwrap();
        assert!(stderr.starts_with("error: "), "{stderr}");
        assert_eq!(stderr.trim_end().lines().count(), 1, "{stderr}");
    }
}

#[test]
fn interior_nul_byte_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.txt"), b"GAT\0TACA\n").unwrap();
    let out = movebwt(&["build", "--input", "bad.txt", "--index", "x.mvtb"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
}
