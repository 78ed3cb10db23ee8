//! Shared driver for the `luinv` golden-file cases.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn fx(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Runs the binary and returns `(exit code, stdout, stderr)`.
pub fn run<S: AsRef<str>>(args: &[S]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_luinv"))
        .args(args.iter().map(AsRef::as_ref))
        .output()
        .expect("spawn luinv");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Replaces the numbers of `max |delta|` lines, which are rounding noise.
pub fn mask_deltas(text: &str) -> String {
    text.lines()
        .map(|line| match line.split_once(" = ") {
            Some((head, _)) if head.starts_with("max |delta|") => format!("{head} = <delta>\n"),
            _ => format!("{line}\n"),
        })
        .collect()
}

pub struct GoldenCase {
    pub args: Vec<String>,
    pub golden: &'static str,
    pub exit: i32,
    pub masked: bool,
}

fn case(args: &[&str], golden: &'static str, exit: i32) -> GoldenCase {
    let args = args
        .iter()
        .map(|a| {
            if a.ends_with(".json") {
                fx(a)
            } else {
                a.to_string()
            }
        })
        .collect();
    GoldenCase {
        args,
        golden,
        exit,
        masked: golden.starts_with("orbit_"),
    }
}

pub fn golden_cases() -> Vec<GoldenCase> {
    vec![
        case(&["decompose", "bell.json"], "decompose_bell.json", 0),
        case(
            &["decompose", "bell.json", "--format", "text"],
            "decompose_bell.txt",
            0,
        ),
        case(
            &["decompose", "product00.json"],
            "decompose_product00.json",
            0,
        ),
        case(
            &["decompose", "maximally_mixed.json"],
            "decompose_maximally_mixed.json",
            0,
        ),
        case(&["decompose", "ghz.json"], "decompose_ghz.json", 0),
        case(
            &["decompose", "ghz.json", "--unfoldings"],
            "decompose_ghz_unfoldings.json",
            0,
        ),
        case(
            &["decompose", "w.json", "--format", "text"],
            "decompose_w.txt",
            0,
        ),
        case(&["invariants", "bell.json"], "invariants_bell.json", 0),
        case(
            &["invariants", "bell.json", "--format", "text"],
            "invariants_bell.txt",
            0,
        ),
        case(
            &["invariants", "product00.json"],
            "invariants_product00.json",
            0,
        ),
        case(
            &["invariants", "maximally_mixed.json"],
            "invariants_maximally_mixed.json",
            0,
        ),
        case(&["invariants", "ghz.json"], "invariants_ghz.json", 0),
        case(&["invariants", "w.json"], "invariants_w.json", 0),
        case(
            &["compare", "bell.json", "product00.json"],
            "compare_bell_product00.txt",
            1,
        ),
        case(
            &["compare", "bell.json", "product00.json", "--format", "json"],
            "compare_bell_product00.json",
            1,
        ),
        case(
            &["compare", "bell.json", "bell.json"],
            "compare_bell_bell.txt",
            0,
        ),
        case(
            &["compare", "maximally_mixed.json", "product00.json"],
            "compare_maximally_mixed_product00.txt",
            1,
        ),
        case(&["compare", "ghz.json", "w.json"], "compare_ghz_w.txt", 1),
        case(
            &["orbit-check", "bell.json", "--trials", "100"],
            "orbit_bell.txt",
            0,
        ),
        case(
            &["orbit-check", "product00.json", "--trials", "20"],
            "orbit_product00.txt",
            0,
        ),
        case(
            &["orbit-check", "maximally_mixed.json", "--trials", "20"],
            "orbit_maximally_mixed.txt",
            0,
        ),
        case(
            &["orbit-check", "ghz.json", "--trials", "100"],
            "orbit_ghz.txt",
            0,
        ),
        case(
            &["orbit-check", "w.json", "--trials", "20"],
            "orbit_w.txt",
            0,
        ),
    ]
}

/// Runs one case; `Err` describes the first mismatch.
pub fn check_case(case: &GoldenCase, update: bool) -> Result<(), String> {
    let (code, stdout, stderr) = run(&case.args);
    if code != case.exit {
        return Err(format!(
            "{:?}: exit {code}, expected {} ({stderr})",
            case.args, case.exit
        ));
    }
    let actual = if case.masked {
        mask_deltas(&stdout)
    } else {
        stdout
    };
    let path = golden_path(case.golden);
    if update {
        fs::write(&path, &actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if actual != expected {
        return Err(format!("{}: output differs from golden", case.golden));
    }
    Ok(())
}

/// `(args, expected exit)` pairs for the exit-code contract.
pub fn exit_code_cases() -> Vec<(Vec<String>, i32)> {
    let f = |args: &[&str]| -> Vec<String> {
        args.iter()
            .map(|a| {
                if a.ends_with(".json") {
                    fx(a)
                } else {
                    a.to_string()
                }
            })
            .collect()
    };
    vec![
        (f(&["invariants", "bell.json"]), 0),
        (f(&["compare", "bell.json", "bell.json"]), 0),
        (f(&["compare", "bell.json", "product00.json"]), 1),
        (f(&["compare", "bell.json", "ghz.json"]), 2),
        (f(&["decompose", "malformed.json"]), 2),
        (f(&["invariants", "missing.json"]), 2),
        (f(&["invariants", "bell.json", "--max-beta", "0"]), 64),
        (f(&["orbit-check", "bell.json", "--trials", "0"]), 64),
        (
            f(&[
                "random",
                "--dims",
                "2,2",
                "--rank",
                "0",
                "--out",
                "unused.json",
            ]),
            64,
        ),
        (f(&["frobnicate"]), 64),
        (Vec::new(), 64),
    ]
}
