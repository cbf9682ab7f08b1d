mod common;

use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubic-approx"))
}

fn schema() -> Value {
    let text = fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/schema/report.schema.json"
    ))
    .unwrap();
    serde_json::from_str(&text).unwrap()
}

fn assert_valid(report: &Value) {
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(report)
        .map(|e| format!("{e} at {}", e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn report_from_problem_file_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("sqrt2.txt");
    fs::write(
        &problem,
        format!(
            "# split tangent quadric over the reals\nform={}\npoint=0:0:0:1\nplace=real\nheight_bound=60\nseed=3\n",
            common::template("x1^3 + x1*x2^2", "x1^2 - 2*x2^2")
        ),
    )
    .unwrap();
    let out = dir.path().join("out");
    let status = bin()
        .args(["report", "--problem"])
        .arg(&problem)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let report = read_json(&out.join("report.json"));
    assert_valid(&report);
    assert_eq!(report["spec"]["seed"], 3);
    assert_eq!(report["spec"]["height_bound"], 60);
    assert_eq!(report["classification"]["predicted_alpha"], "3/2");
    assert_eq!(report["verdict"]["kind"], "consistent");
    let csv = fs::read_to_string(out.join("points.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("point,height,dist,delta"));
    assert!(lines.next().is_some());
    let tsv = fs::read_to_string(out.join("envelope.tsv")).unwrap();
    assert!(tsv.starts_with("epsilon\tcount\talpha_hat\twitness\n"));
}

#[test]
fn flags_override_file_and_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("p.txt");
    fs::write(
        &problem,
        format!("form={}\npoint=1:-1:0:0\nplace=p=7\n", common::FERMAT),
    )
    .unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = bin()
            .args([
                "report",
                "--place",
                "real",
                "--height-bound",
                "20",
                "--liouville-bounds",
                "5,10,20",
                "--problem",
            ])
            .arg(&problem)
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        out
    };
    let (a, b) = (run("a"), run("b"));
    for f in ["report.json", "points.csv", "envelope.tsv"] {
        assert_eq!(
            fs::read(a.join(f)).unwrap(),
            fs::read(b.join(f)).unwrap(),
            "{f} differs"
        );
    }
    let report = read_json(&a.join("report.json"));
    assert_valid(&report);
    assert_eq!(report["spec"]["place"], "real");
    assert_eq!(report["classification"]["case"], "OnRationalLine");
}

#[test]
fn each_subcommand_emits_a_valid_report() {
    let form = common::template("x1^3 + x1*x2^2", "x1^2 + x2^2");
    for cmd in ["classify", "construct", "estimate", "liouville"] {
        let out = bin()
            .args([
                cmd,
                "--form",
                &form,
                "--point",
                "0:0:0:1",
                "--height-bound",
                "30",
                "--liouville-bounds",
                "10,20",
            ])
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{cmd}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let report: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_valid(&report);
        assert_eq!(report["command"], cmd);
    }
}

#[test]
fn parse_errors_report_position_and_fail() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("bad.txt");
    fs::write(&problem, "form=x0^3 + x1^3 + x2^3 + x3^3\n\nbogus=1\n").unwrap();
    let out = bin()
        .args(["classify", "--problem"])
        .arg(&problem)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("ParseError") && err.contains("line 3"),
        "{err}"
    );

    let out = bin()
        .args([
            "classify",
            "--form",
            "x0^3 + x1^3 + x2^3 + x3^3",
            "--point",
            "1:1:1:1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("PointNotOnX"));
}

#[test]
fn isolated_point_reports_no_approximants_on_the_section() {
    // the tangent quadric s^2 + t^2 has no real points
    let form = common::template("x1^3 + x1*x2^2", "x1^2 + x2^2");
    let out = bin()
        .args([
            "estimate",
            "--form",
            &form,
            "--point",
            "0:0:0:1",
            "--height-bound",
            "12",
            "--epsilons",
            "1/1000",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["estimate"]["outcome"]["kind"], "no_approximants");
}
