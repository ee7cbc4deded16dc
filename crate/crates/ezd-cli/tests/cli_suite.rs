//! End-to-end tests of the `ezd` binary: exit-code contract (0 verified,
//! 1 mathematical refusal, 2 input error), report shapes, and byte-for-byte
//! determinism of repeated runs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push("fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ezd")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn check_ezd_verifies_fixture() {
    let out = run(&["check-ezd", "--ring", &fixture("artinian_f2.toml"), "--x", "x", "--y", "x"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verified"));
}

#[test]
fn check_ezd_refuses_with_failing_equality() {
    // (0:x) = (x) != (y) over k[x,y]/(x^2)
    let out = run(&["check-ezd", "--ring", &fixture("double_line.toml"), "--x", "x", "--y", "y"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("refused"), "{text}");
    assert!(text.contains("(0:x)"), "{text}");
}

#[test]
fn malformed_relation_is_an_input_error_with_location() {
    let dir = std::env::temp_dir();
    let path = dir.join("ezd_bad_relation.toml");
    std::fs::write(
        &path,
        "field = \"Q\"\nvars = [\"x\", \"y\"]\nrelations = [\"x^-2\"]\n",
    )
    .unwrap();
    let out = run(&["check-ezd", "--ring", path.to_str().unwrap(), "--x", "x", "--y", "y"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("relation 1"), "{err}");
    assert!(err.contains("column"), "{err}");
}

#[test]
fn unknown_variable_is_an_input_error() {
    let out = run(&["check-ezd", "--ring", &fixture("artinian_f2.toml"), "--x", "q", "--y", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn family_five_members_distinct_fittings() {
    let args = [
        "family",
        "--ring",
        &fixture("artinian_f5.toml"),
        "--x",
        "x",
        "--y",
        "x",
        "--n",
        "1",
        "--witnesses",
        "y;z",
        "--r",
        "0,1,2,3,4",
        "--format",
        "json",
    ];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let family = json["family"].as_array().unwrap();
    assert_eq!(family.len(), 5);
    let fittings: Vec<String> =
        family.iter().map(|f| f["fitting_generators"].to_string()).collect();
    for i in 0..fittings.len() {
        for j in (i + 1)..fittings.len() {
            assert_ne!(fittings[i], fittings[j], "members {i} and {j} share a Fitting ideal");
        }
    }
    for f in family {
        assert_eq!(f["ses_verified"], serde_json::Value::Bool(true));
        assert_eq!(f["indecomposable"]["verdict"], "Certified");
        assert_eq!(f["resolution_period"], 2);
    }

    // byte-identical on a second run
    let again = run(&args);
    assert_eq!(out.stdout, again.stdout, "family output is not deterministic");
}

#[test]
fn family_single_parameter() {
    let out = run(&[
        "family",
        "--ring",
        &fixture("artinian_f5.toml"),
        "--x",
        "x",
        "--y",
        "x",
        "--n",
        "1",
        "--witnesses",
        "y;z",
        "--r",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["family"].as_array().unwrap().len(), 1);
}

#[test]
fn family_with_assumed_g_regularity_is_conditional() {
    let out = run(&[
        "family",
        "--ring",
        &fixture("determinantal_f2.toml"),
        "--x",
        "x",
        "--y",
        "y",
        "--n",
        "1",
        "--witnesses",
        "v;w",
        "--r",
        "0,1",
        "--assume-g-regular",
        "minimal multiplicity route",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["greg"]["verdict"], "Assumed");
    for f in json["family"].as_array().unwrap() {
        assert_eq!(f["indecomposable"]["verdict"], "Conditional");
    }
}

#[test]
fn family_witness_count_mismatch_is_input_error() {
    let out = run(&[
        "family",
        "--ring",
        &fixture("artinian_f5.toml"),
        "--x",
        "x",
        "--y",
        "x",
        "--n",
        "2",
        "--witnesses",
        "y;z",
        "--r",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn s_invariant_exact_on_artinian_fixture() {
    let out = run(&[
        "s-invariant",
        "--ring",
        &fixture("artinian_f2.toml"),
        "--x",
        "x",
        "--y",
        "x",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["verdict"], "ExactlyK(2)");
}

#[test]
fn s_invariant_growth_on_two_dimensional_fixture() {
    let out = run(&[
        "s-invariant",
        "--ring",
        &fixture("determinantal_f2.toml"),
        "--x",
        "x",
        "--y",
        "y",
        "--powers",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["verdict"], "EvidenceInfinite(growth degree 1)");
    assert_eq!(json["nu_values"].as_array().unwrap().len(), 5);
}

#[test]
fn s_invariant_zero_powers_gives_trivial_lower_bound() {
    let out = run(&[
        "s-invariant",
        "--ring",
        &fixture("determinantal_f2.toml"),
        "--x",
        "x",
        "--y",
        "y",
        "--powers",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["verdict"], "AtLeastK(0)");
    assert!(json["nu_values"].as_array().unwrap().is_empty());
}

#[test]
fn resolve_alternates_with_period_two() {
    let out = run(&[
        "resolve",
        "--ring",
        &fixture("hypersurface_xy.toml"),
        "--x",
        "x",
        "--y",
        "y",
        "--steps",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["period"], 2);
    assert_eq!(json["differentials"][0], "[[y]]");
    assert_eq!(json["differentials"][1], "[[x]]");
}

#[test]
fn report_emits_csv_rows() {
    let out = run(&[
        "report",
        "--ring",
        &fixture("determinantal_f2.toml"),
        "--x",
        "x",
        "--y",
        "y",
        "--r-max",
        "2",
        "--assume-g-regular",
        "minimal multiplicity route",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4); // header + three members
    assert!(lines[1].starts_with("0,"));
    assert!(lines[1].contains(",3,"));
    assert!(lines[3].contains(",9,"));
}

#[test]
fn report_banner_on_dimension_failure_still_exits_zero() {
    let out = run(&[
        "report",
        "--ring",
        &fixture("artinian_f2.toml"),
        "--x",
        "x",
        "--y",
        "x",
        "--r-max",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["hypothesis_checks"]["dim_ok"], serde_json::Value::Bool(false));
    assert!(json["warnings"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w.as_str().unwrap().contains("HYPOTHESIS FAILURE")));
    // text format carries the visual banner
    let text_out = run(&[
        "report",
        "--ring",
        &fixture("artinian_f2.toml"),
        "--x",
        "x",
        "--y",
        "x",
        "--r-max",
        "1",
    ]);
    assert!(stdout(&text_out).contains("!! HYPOTHESIS FAILURE"));
}

#[test]
fn report_json_is_deterministic() {
    let args = [
        "report",
        "--ring",
        &fixture("nilpotent_square_zw.toml"),
        "--x",
        "z",
        "--y",
        "w",
        "--r-max",
        "1",
        "--assume-g-regular",
        "note",
        "--format",
        "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn missing_ring_file_is_an_input_error() {
    let out = run(&["check-ezd", "--ring", "/nonexistent.toml", "--x", "x", "--y", "y"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gorenstein_fixture_pairs_verify() {
    for (x, y) in [("x", "y"), ("z", "z")] {
        let out = run(&[
            "check-ezd",
            "--ring",
            &fixture("gorenstein_graded.toml"),
            "--x",
            x,
            "--y",
            y,
        ]);
        assert_eq!(out.status.code(), Some(0), "pair ({x}, {y})");
    }
    let out = run(&[
        "check-ezd",
        "--ring",
        &fixture("square_times_y.toml"),
        "--x",
        "Y",
        "--y",
        "X^2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}
