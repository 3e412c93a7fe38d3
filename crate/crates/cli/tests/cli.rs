//! End-to-end checks of the command-line interface.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sl2period"))
}

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push("data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("run binary")
}

#[test]
fn local_period_prints_the_expected_values() {
    let out = run(&[
        "local-period",
        "--p",
        "3",
        "--case",
        "mg",
        "--wp",
        "1",
        "--xi",
        "-1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("8/9"), "missing local integral value: {text}");
    assert!(text.contains("1/2"), "missing regularized period: {text}");
    assert!(text.contains("9/16"), "missing L-ratio: {text}");
}

#[test]
fn arch_prints_the_four_constants() {
    let out = run(&["arch", "--k", "1", "--ell", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains('8'));
    assert!(text.contains("1/2*pi^2"));
    assert!(text.contains("4/3"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for format in ["human", "tsv", "records"] {
        let args = [
            "--format",
            format,
            "--seed",
            "77",
            "oracle",
            "--factor",
            "tau",
            "--element",
            "alpha:1",
            "--p",
            "3",
            "--resolution",
            "4",
        ];
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "format {format} not reproducible");
    }
}

#[test]
fn machine_readable_value_roundtrips() {
    // the records format carries the exact scalar grammar
    let out = run(&[
        "--format",
        "records",
        "oracle",
        "--factor",
        "pi",
        "--element",
        "beta:1",
        "--p",
        "3",
        "--resolution",
        "5",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let value_line = text
        .lines()
        .find(|l| l.starts_with("value = "))
        .expect("value line");
    let literal = value_line.trim_start_matches("value = ");
    let parsed: sl2period::arith::ExactScalar = literal.parse().unwrap();
    // compare against the closed form
    let cfg = sl2period::periods::LocalConfig::new(
        3,
        sl2period::periods::LevelCase::DividesMg,
        1,
        sl2period::periods::XiValue::Formal,
    )
    .unwrap();
    let d_disc = sl2period::periods::pick_discriminant(3, 1).unwrap();
    let closed = sl2period::periods::matrix_coefficient_closed(
        sl2period::periods::ClosedFactor::PiTilde { d_disc },
        sl2period::padic::CosetElement::Beta(1),
        &cfg,
    )
    .unwrap();
    assert_eq!(&parsed, closed.as_scalar().unwrap());
}

#[test]
fn ingest_check_accepts_and_rejects() {
    let out = run(&["ingest-check", "--file", &data("newform-3-2.toml")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("status"));

    // a file with a missing Atkin-Lehner sign is rejected with the named
    // invariant
    let dir = std::env::temp_dir().join("sl2period-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad-level.toml");
    std::fs::write(&bad, "level = 15\nweight = 2\n[atkin_lehner]\n\"3\" = 1\n").unwrap();
    let out = run(&["ingest-check", "--file", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("atkin_lehner incomplete"), "got: {err}");

    // an eigenvalue violating the ramified identity is named in the error
    let bad2 = dir.join("bad-eigen.toml");
    std::fs::write(
        &bad2,
        "level = 3\nweight = 2\n[atkin_lehner]\n\"3\" = 1\n[ap]\n\"3\" = \"5/1\"\n",
    )
    .unwrap();
    let out = run(&["ingest-check", "--file", bad2.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("a(p) = -w_p p^(k-1)"), "got: {err}");

    // a parse error points at the file
    let bad3 = dir.join("bad-syntax.toml");
    std::fs::write(&bad3, "level = [\n").unwrap();
    let out = run(&["ingest-check", "--file", bad3.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn central_value_example() {
    let out = run(&["central-value", "--file", &data("central-value-1-3.toml")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("128"));
    assert!(text.contains("4/3"));
}

#[test]
fn forms_subcommands_run() {
    let f = data("newform-3-2.toml");
    let out = run(&["forms", "psi", "--file", &f, "--xi", "8", "--p", "3"]);
    assert!(out.status.success());
    let out = run(&["forms", "c", "--file", &f, "--xi", "8", "--method", "euler"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("2"), "c(8) should surface the table entry");
    let out = run(&[
        "forms",
        "whittaker",
        "--p",
        "3",
        "--xi",
        "3",
        "--element",
        "one",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("4/3"));
    let out = run(&[
        "forms",
        "correction",
        "--file",
        &f,
        "--p",
        "3",
        "--b1",
        "3",
        "--b2",
        "3",
        "--b3",
        "3",
        "--delta",
        "2",
        "--mode",
        "closed",
    ]);
    assert!(out.status.success());
    let out = run(&[
        "forms", "sk", "--file", &f, "--b1", "1", "--b2", "0", "--b3", "2",
    ]);
    assert!(out.status.success());
    let out = run(&[
        "forms", "breve", "--file", &f, "--b1", "1", "--b2", "1", "--b3", "3", "--y1", "2",
        "--v", "1", "--y2", "1", "--m", "1", "--mg", "3", "--delta", "2",
    ]);
    assert!(out.status.success());
}

#[test]
fn certify_reports_endpoints() {
    let out = run(&[
        "--format",
        "records",
        "certify",
        "--p",
        "3",
        "--case",
        "mg",
        "--wp",
        "1",
        "--xi",
        "1",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("bracket_lo = 1/18"));
    assert!(text.contains("passes = yes"));
}

#[test]
fn unknown_flags_are_rejected() {
    let out = run(&["arch", "--k", "1", "--ell", "3", "--bogus"]);
    assert!(!out.status.success());
}
