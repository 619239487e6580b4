//! Black-box tests of the command-line interface: exit codes, table output,
//! determinism, and the simulate → validate file flow.

use std::path::Path;
use std::process::{Command, Output};

fn powcalc(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powcalc"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn optimize_c1_prints_expected_table() {
    let dir = tempfile::tempdir().unwrap();
    let output = powcalc(&["optimize", "--scenario", "c1"], dir.path());
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("# effective constants"), "{text}");
    assert!(text.contains("s r d cost robust_cost"));
    for row in [
        "18 48 41 54004.399",
        "18 48 40 54002.2",
        "18 48 39 54001.1",
        "18 48 38 54000.55",
        "18 48 37 54000.275",
    ] {
        assert!(text.contains(row), "missing {row} in:\n{text}");
    }
}

#[test]
fn optimize_writes_delimited_file_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.txt");
    let out_b = dir.path().join("b.txt");
    let run_a = powcalc(
        &["optimize", "--scenario", "c2", "--out", "a.txt"],
        dir.path(),
    );
    let run_b = powcalc(
        &["optimize", "--scenario", "c2", "--out", "b.txt"],
        dir.path(),
    );
    assert!(run_a.status.success() && run_b.status.success());
    assert_eq!(run_a.stdout, run_b.stdout);
    let a = std::fs::read_to_string(out_a).unwrap();
    let b = std::fs::read_to_string(out_b).unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with("s r d cost robust_cost\n"));
    assert!(a.contains("18 48 40 "), "C2 top tuple missing:\n{a}");
}

#[test]
fn infeasible_scenario_is_a_result_not_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let bundled = include_str!("../scenarios/c1.txt");
    let tight = bundled.replace("tau_u = 1454/7", "tau_u = 0.06871");
    std::fs::write(dir.path().join("tight.txt"), tight).unwrap();
    let output = powcalc(&["optimize", "--scenario", "tight.txt"], dir.path());
    assert!(output.status.success(), "exit should be 0");
    assert!(stdout(&output).contains("no robustly feasible tuple"));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    // missing scenario key
    let bundled = include_str!("../scenarios/c1.txt");
    let broken: String = bundled
        .lines()
        .filter(|l| !l.starts_with("delta3"))
        .collect::<Vec<_>>()
        .join("\n");
    std::fs::write(dir.path().join("broken.txt"), broken).unwrap();
    let output = powcalc(&["optimize", "--scenario", "broken.txt"], dir.path());
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("delta3"));

    // unknown subcommand
    let output = powcalc(&["frobnicate"], dir.path());
    assert_eq!(output.status.code(), Some(1));

    // nonexistent scenario file
    let output = powcalc(&["optimize", "--scenario", "missing.txt"], dir.path());
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn simulate_then_validate_flow() {
    let dir = tempfile::tempdir().unwrap();
    let output = powcalc(
        &[
            "simulate",
            "--out",
            "corpus",
            "--grid",
            "4,12,6;1,8,4",
            "--seed",
            "5",
            "--races",
            "400",
        ],
        dir.path(),
    );
    assert!(output.status.success(), "{}", stdout(&output));
    assert!(dir.path().join("corpus/campaign_s4_r12_d6.txt").exists());
    assert!(dir.path().join("corpus/campaign_s1_r8_d4.txt").exists());

    let output = powcalc(&["validate", "corpus", "--out", "db.txt"], dir.path());
    assert!(output.status.success(), "{}", stdout(&output));
    let text = stdout(&output);
    assert!(text.contains("# database entries: 192"), "{text}");
    assert!(text.contains("threshold curves"));
    let db = std::fs::read_to_string(dir.path().join("db.txt")).unwrap();
    assert_eq!(db.lines().count(), 192);
    // an s=1 grid yields all-zero empirical dispute frequencies
    for line in db.lines().filter(|l| l.starts_with("1 ")) {
        let empirical: f64 = line.split_whitespace().nth(6).unwrap().parse().unwrap();
        assert_eq!(empirical, 0.0);
    }
}

#[test]
fn simulate_deterministic_given_seed() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["one", "two"] {
        let output = powcalc(
            &[
                "simulate", "--out", out, "--grid", "4,10,5", "--seed", "42", "--races", "300",
            ],
            dir.path(),
        );
        assert!(output.status.success());
    }
    let one = std::fs::read(dir.path().join("one/campaign_s4_r10_d5.txt")).unwrap();
    let two = std::fs::read(dir.path().join("two/campaign_s4_r10_d5.txt")).unwrap();
    assert_eq!(one, two);
}

#[test]
fn ledger_demo_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let output = powcalc(&["ledger-demo"], dir.path());
    assert!(output.status.success());
    let text = stdout(&output);
    for needle in [
        "submit",
        "mined block 1",
        "confirmed",
        "Verified",
        "Unverified",
        "Untrustworthy",
        "chain verified",
    ] {
        assert!(text.contains(needle), "missing {needle:?} in:\n{text}");
    }
}
