//! End-to-end CLI checks: generation determinism, artifact verification,
//! tamper detection, exit codes and report aggregation.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypernibble"))
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

/// Strips the trailing wall-time column for determinism comparisons.
fn strip_wall(csv: &str) -> String {
    csv.lines()
        .map(|l| match l.rsplit_once(',') {
            Some((head, _)) => head.to_string(),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn gen_is_deterministic_and_canonical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.lhg");
    let b = dir.path().join("b.lhg");
    for out in [&a, &b] {
        let status = bin()
            .args([
                "gen",
                "--family",
                "paircover",
                "--n",
                "100",
                "--triple-frac",
                "0.5",
                "--gen-seed",
                "1",
                "--out",
                out.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(read(&a), read(&b), "identical spec and seed, identical bytes");

    // Parse -> serialize is the identity on the canonical output.
    let fano = bin()
        .args(["gen", "--family", "pg", "--q", "2"])
        .output()
        .unwrap();
    assert!(fano.status.success());
    let text = String::from_utf8(fano.stdout).unwrap();
    assert!(text.starts_with("7 7\n"));
}

#[test]
fn gen_infeasible_order_fails() {
    let out = bin()
        .args(["gen", "--family", "sts", "--n", "8"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn run_verify_report_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let instance = dir.path().join("sts13.lhg");
    let status = bin()
        .args([
            "gen", "--family", "sts", "--n", "13", "--out",
            instance.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());

    let artifacts = dir.path().join("artifacts");
    let csv = dir.path().join("results.csv");
    for algo in ["nibble", "greedy-match", "greedy-colour", "incidence-colour"] {
        let status = bin()
            .args([
                "run",
                "--input",
                instance.to_str().unwrap(),
                "--family",
                "sts",
                "--algo",
                algo,
                "--seeds",
                "0..3",
                "--out-dir",
                artifacts.to_str().unwrap(),
                "--csv",
                csv.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success(), "{algo} failed");
    }

    // Every artifact re-verifies.
    let mut checked = 0;
    for entry in std::fs::read_dir(&artifacts).unwrap() {
        let path = entry.unwrap().path();
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        if ext == "mtc" || ext == "col" {
            let status = bin()
                .args(["verify", "--instance", instance.to_str().unwrap()])
                .arg(&path)
                .status()
                .unwrap();
            assert!(status.success(), "{} failed verification", path.display());
            checked += 1;
        }
    }
    assert!(checked >= 12);

    // Tampering is caught with a nonzero exit.
    let colouring = std::fs::read_dir(&artifacts)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.extension().and_then(|e| e.to_str()) == Some("col"))
        .unwrap();
    let body = read(&colouring);
    // Force two intersecting edges onto one colour: edges 0 and 1 of a
    // Steiner triple system built on vertex 0 always intersect.
    let mut tampered: Vec<String> = Vec::new();
    for line in body.lines() {
        if let Some((e, _)) = line.split_once(',') {
            if e == "0" {
                tampered.push("0,42".into());
                continue;
            }
            if e == "1" {
                tampered.push("1,42".into());
                continue;
            }
        }
        tampered.push(line.to_string());
    }
    std::fs::write(&colouring, tampered.join("\n")).unwrap();
    let status = bin()
        .args(["verify", "--instance", instance.to_str().unwrap()])
        .arg(&colouring)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));

    // Out-of-range edge ids are a host mismatch.
    let bad = dir.path().join("bad.mtc");
    std::fs::write(&bad, "0 999\n").unwrap();
    let out = bin()
        .args(["verify", "--instance", instance.to_str().unwrap()])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("out of range"), "got: {stdout}");

    // The report aggregates by family and algorithm.
    let summary = dir.path().join("summary.csv");
    let out = bin()
        .args([
            "report",
            "--csv",
            csv.to_str().unwrap(),
            "--out",
            summary.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("sts / nibble"));
    assert!(text.contains("sts / incidence-colour"));
    assert!(read(&summary).lines().count() >= 5);

    // Empty CSV: empty summary, success.
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, format!("{}\n", hypernibble::cli::CSV_HEADER)).unwrap();
    let out = bin()
        .args(["report", "--csv", empty.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn run_results_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut csvs = Vec::new();
    for tag in ["x", "y"] {
        let csv = dir.path().join(format!("{tag}.csv"));
        let artifacts = dir.path().join(format!("artifacts-{tag}"));
        let status = bin()
            .args([
                "run",
                "--family",
                "paircover",
                "--n",
                "200",
                "--triple-frac",
                "0.6",
                "--gen-seed",
                "3",
                "--algo",
                "nibble",
                "--seeds",
                "0..6",
                "--jobs",
                "3",
                "--out-dir",
                artifacts.to_str().unwrap(),
                "--csv",
                csv.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
        csvs.push(read(&csv));
    }
    assert_eq!(strip_wall(&csvs[0]), strip_wall(&csvs[1]));

    // Artifact bytes are identical too.
    let a = std::fs::read_dir(dir.path().join("artifacts-x")).unwrap().count();
    assert!(a >= 6);
    for entry in std::fs::read_dir(dir.path().join("artifacts-x")).unwrap() {
        let path = entry.unwrap().path();
        let twin = dir
            .path()
            .join("artifacts-y")
            .join(path.file_name().unwrap());
        assert_eq!(read(&path), read(&twin));
    }
}

#[test]
fn usage_errors_exit_two() {
    let out = bin().args(["run", "--algo", "nibble"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["gen", "--family", "nosuch", "--n", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn efl_run_emits_n_plus_one_flag() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("efl.csv");
    let status = bin()
        .args([
            "run",
            "--family",
            "paircover",
            "--n",
            "500",
            "--triple-frac",
            "0.5",
            "--gen-seed",
            "2",
            "--algo",
            "efl3",
            "--csv",
            csv.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let body = read(&csv);
    let row = body.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    let header: Vec<&str> = hypernibble::cli::CSV_HEADER.split(',').collect();
    let idx = header.iter().position(|&c| c == "n_plus_one_ok").unwrap();
    assert_eq!(cells[idx], "1");
}
