use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn artsoc(args: &[&str], root: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artsoc"))
        .args(args)
        .env("ARTSOC_OUTPUT_ROOT", root)
        .output()
        .unwrap()
}

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("run.cfg");
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

const SCHELLING: &str = "# small run\nmodel = schelling\nseed = 4\nticks = 100\noutput_dir = out\nschelling.width = 10\nschelling.height = 10\n";

#[test]
fn validate_prints_canonical_config() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SCHELLING);
    let out = artsoc(&["validate", &cfg], tmp.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("schelling.rule = threshold-table\n"));
    // the canonical form is itself a valid config
    fs::write(tmp.path().join("again.cfg"), &text).unwrap();
    let again = tmp.path().join("again.cfg").display().to_string();
    let out = artsoc(&["validate", &again], tmp.path());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), text);
}

#[test]
fn run_writes_under_output_root() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SCHELLING);
    let out = artsoc(&["run", &cfg], tmp.path());
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let dir = tmp.path().join("out");
    let csv = fs::read_to_string(dir.join("metrics.csv")).unwrap();
    assert!(csv.starts_with("tick,"));
    assert!(csv.ends_with('\n') && !csv.contains('\r'));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["seed"], "4");
    assert!(manifest["rng_algorithm"]
        .as_str()
        .unwrap()
        .contains("xoshiro256++"));
}

#[test]
fn sweep_writes_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SCHELLING);
    let out = artsoc(
        &[
            "sweep",
            &cfg,
            "--param",
            "schelling.vacancy_fraction=0.1,0.2",
            "--param",
            "schelling.relocation=nearest,random",
            "--replicates",
            "2",
        ],
        tmp.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = fs::read_to_string(tmp.path().join("out/summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 1 + 8);
    assert!(tmp.path().join("out/run_0007/metrics.csv").exists());
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = write_config(
        tmp.path(),
        "model = schelling\nseed = 1\nschelling.width = 7\n",
    );
    assert_eq!(
        artsoc(&["validate", &bad], tmp.path()).status.code(),
        Some(1)
    );
    assert_eq!(artsoc(&["run", &bad], tmp.path()).status.code(), Some(1));

    let unknown = write_config(tmp.path(), "model = ant\nseed = 1\nant.colour = red\n");
    let out = artsoc(&["run", &unknown], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ant.colour"));

    // a regular file where the output directory should be
    let cfg = write_config(tmp.path(), SCHELLING);
    fs::write(tmp.path().join("out"), "").unwrap();
    assert_eq!(artsoc(&["run", &cfg], tmp.path()).status.code(), Some(2));

    let missing = tmp.path().join("nope.cfg").display().to_string();
    assert_eq!(
        artsoc(&["validate", &missing], tmp.path()).status.code(),
        Some(2)
    );
}
