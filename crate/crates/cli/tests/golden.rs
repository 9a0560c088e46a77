//! Runs the `bdtriple` binary on the documents in `tests/golden` and compares
//! stdout, stderr and the exit code with the files in `tests/golden/expected`.
//!
//! Set `BDTRIPLE_BLESS=1` to rewrite the expected files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

struct Case {
    name: &'static str,
    args: &'static [&'static str],
    exit: i32,
}

const CASES: &[Case] = &[
    Case {
        name: "verify_sl2_v3",
        args: &["verify", "sl2_v3_triple.json"],
        exit: 0,
    },
    Case {
        name: "verify_sl2_v3_machine",
        args: &["--format", "machine", "verify", "sl2_v3_triple.json"],
        exit: 0,
    },
    Case {
        name: "verify_sl2_v3_pair",
        args: &["verify", "sl2_v3_pair.json"],
        exit: 0,
    },
    Case {
        name: "param_array_uq2",
        args: &["param-array", "uq2_v2_triple.json"],
        exit: 0,
    },
    Case {
        name: "base_uq2",
        args: &["base", "uq2_v2_triple.json"],
        exit: 0,
    },
    Case {
        name: "base_half",
        args: &["base", "half_base_array.json"],
        exit: 0,
    },
    Case {
        name: "relations_uq2",
        args: &["relations", "uq2_v2_triple.json"],
        exit: 0,
    },
    Case {
        name: "relations_sl2_v3",
        args: &["relations", "sl2_v3_triple.json"],
        exit: 0,
    },
    Case {
        name: "construct_q2_121",
        args: &["--q", "2", "construct", "array_quantum_q2_121.json"],
        exit: 0,
    },
    Case {
        name: "construct_classical_d3",
        args: &["construct", "array_classical_d3.json"],
        exit: 0,
    },
    Case {
        name: "extend_sl2_v3",
        args: &["extend", "sl2_v3_pair.json"],
        exit: 0,
    },
    Case {
        name: "extend_sl2_v3_target",
        args: &["extend", "--target-sequence=5,1,-3,-7", "sl2_v3_pair.json"],
        exit: 0,
    },
    Case {
        name: "reduce_conjugate",
        args: &["reduce", "sl2_v3_conjugate.json"],
        exit: 0,
    },
    Case {
        name: "isomorphic_conjugate",
        args: &["isomorphic", "sl2_v3_triple.json", "sl2_v3_conjugate.json"],
        exit: 0,
    },
    Case {
        name: "isomorphic_different",
        args: &["isomorphic", "sl2_v3_triple.json", "uq2_v2_triple.json"],
        exit: 0,
    },
    Case {
        name: "module_build_sl2_v3",
        args: &["module", "build", "sl2_v3_spec.json"],
        exit: 0,
    },
    Case {
        name: "module_build_uq2_v2",
        args: &["module", "build", "uq2_v2_spec.json"],
        exit: 0,
    },
    Case {
        name: "module_decompose_uq2",
        args: &["--q", "2", "module", "decompose", "uq2_v2_triple.json"],
        exit: 0,
    },
    Case {
        name: "nonsquare_pair",
        args: &["verify", "nonsquare_pair.json"],
        exit: 2,
    },
    Case {
        name: "commuting_pair",
        args: &["verify", "commuting_pair.json"],
        exit: 1,
    },
    Case {
        name: "commuting_pair_machine",
        args: &["--format", "machine", "verify", "commuting_pair.json"],
        exit: 1,
    },
    Case {
        name: "shape_212",
        args: &["construct", "shape_212_array.json"],
        exit: 1,
    },
    Case {
        name: "half_base",
        args: &["construct", "half_base_array.json"],
        exit: 3,
    },
    Case {
        name: "missing_file",
        args: &["verify", "no_such_file.json"],
        exit: 2,
    },
    Case {
        name: "wrong_document",
        args: &["construct", "sl2_v3_triple.json"],
        exit: 2,
    },
];

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdtriple"))
        .args(args)
        .current_dir(golden_dir())
        .output()
        .expect("binary runs")
}

fn check(path: &Path, actual: &str, bless: bool) -> Result<(), String> {
    if bless {
        fs::write(path, actual).expect("write expected file");
        return Ok(());
    }
    let expected = fs::read_to_string(path).unwrap_or_default();
    if expected == actual {
        Ok(())
    } else {
        Err(format!(
            "{} differs\n--- expected\n{expected}--- actual\n{actual}",
            path.display()
        ))
    }
}

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("BDTRIPLE_BLESS").is_some();
    let expected = golden_dir().join("expected");
    fs::create_dir_all(&expected).unwrap();
    let mut failures = Vec::new();
    for case in CASES {
        let out = run(case.args);
        let code = out.status.code().expect("not killed by a signal");
        if code != case.exit {
            failures.push(format!(
                "{}: exit {code}, expected {}",
                case.name, case.exit
            ));
        }
        let stdout = String::from_utf8(out.stdout).unwrap();
        let stderr = String::from_utf8(out.stderr).unwrap();
        for (ext, text) in [("stdout", &stdout), ("stderr", &stderr)] {
            let path = expected.join(format!("{}.{ext}", case.name));
            if let Err(e) = check(&path, text, bless) {
                failures.push(format!("{}: {e}", case.name));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn stdin_and_output_file() {
    let text = fs::read_to_string(golden_dir().join("sl2_v3_triple.json")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("array.json");
    let mut child = Command::new(env!("CARGO_BIN_EXE_bdtriple"))
        .args(["--output", target.to_str().unwrap(), "param-array", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = fs::read_to_string(&target).unwrap();
    let expected = run(&["param-array", "sl2_v3_triple.json"]);
    assert_eq!(written.as_bytes(), expected.stdout.as_slice());
}

#[test]
fn construct_then_verify_reproduces_arrays() {
    for name in [
        "array_classical_d3.json",
        "array_quantum_q2_121.json",
        "array_quantum_q3_1221.json",
        "array_diameter0.json",
        "array_classical_123321.json",
    ] {
        let input = fs::read_to_string(golden_dir().join(name)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let triple = dir.path().join("triple.json");
        let built = run(&["--output", triple.to_str().unwrap(), "construct", name]);
        assert!(built.status.success(), "{name}");
        let back = run(&["param-array", triple.to_str().unwrap()]);
        assert!(back.status.success(), "{name}");
        let parse = |s: &str| serde_json::from_str::<serde_json::Value>(s).unwrap();
        assert_eq!(
            parse(&String::from_utf8(back.stdout).unwrap()),
            parse(&input),
            "{name}"
        );
    }
}
