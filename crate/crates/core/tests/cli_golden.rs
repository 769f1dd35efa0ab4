//! Byte-level golden files for the CLI. Regenerate with
//! `FSKEW_BLESS=1 cargo test --test cli_golden`.

mod common;

use std::process::Command;

use common::{check_case, golden_path, run_case, CASES};

#[test]
fn command_matrix_matches_golden_files() {
    let failures: Vec<String> = CASES.iter().filter_map(|c| check_case(c).err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_golden_file_belongs_to_a_case() {
    let dir = golden_path("x").parent().unwrap().to_path_buf();
    for entry in std::fs::read_dir(dir).unwrap() {
        let name = entry.unwrap().file_name().to_string_lossy().to_string();
        if let Some(stem) = name.strip_suffix(".out") {
            assert!(CASES.iter().any(|c| c.name == stem), "stale golden file {name}");
        }
    }
}

#[test]
fn binary_agrees_with_in_process_runs() {
    for c in CASES.iter().step_by(4) {
        let out = Command::new(env!("CARGO_BIN_EXE_fskew"))
            .args(c.args)
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .output()
            .unwrap();
        let inproc = run_case(c);
        assert_eq!(out.status.code(), Some(c.exit), "{}", c.name);
        assert_eq!(String::from_utf8(out.stdout).unwrap(), inproc.stdout, "{}", c.name);
    }
}

#[test]
fn repeated_runs_are_identical() {
    for c in CASES {
        assert_eq!(run_case(c), run_case(c), "{}", c.name);
    }
}

#[test]
fn usage_errors_exit_with_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_fskew"))
        .args(["skew", "nope"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let out = Command::new(env!("CARGO_BIN_EXE_fskew")).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
