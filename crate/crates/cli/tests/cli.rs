use std::path::Path;
use std::process::{Command, Output};

use fkpp_cli::claims::REGISTRY;
use serde_json::Value;

fn fkpp(dir: &Path, config: &str, args: &[&str]) -> Output {
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_fkpp"))
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("out"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join("out").join(name)).unwrap()
}

const SMALL: &str = "nx = 128\nnt = 65\nic_sigma = 0.1\nmax_n = 3\n";

#[test]
fn default_surface_is_figure_one_data() {
    let dir = tempfile::tempdir().unwrap();
    let o = fkpp(dir.path(), "", &["surface"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("method=first_order_spectral"));
    assert!(stdout(&o).contains("linear_match=n/a"));
    let csv = read(dir.path(), "surface_first_order_spectral.csv");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,t,u"));
    assert_eq!(lines.count(), 1024 * 512);
    let summary = read(dir.path(), "surface_first_order_spectral_summary.csv");
    assert!(summary.starts_with("t,min,max,mass\n"));
    assert_eq!(summary.lines().count(), 513);
}

#[test]
fn linear_surfaces_match_green() {
    let dir = tempfile::tempdir().unwrap();
    for m in ["rational_spectral", "first_order_spectral", "closed_form_spatial"] {
        let o = fkpp(dir.path(), "r = 0\n", &["surface", "--method", m]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("linear_match=true"), "{m}: {}", stdout(&o));
    }
}

#[test]
fn closed_form_emits_difference() {
    let dir = tempfile::tempdir().unwrap();
    let o = fkpp(dir.path(), SMALL, &["surface", "--method", "closed_form_spatial"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("diff closed_form_spatial vs first_order_spectral max_abs="));
    let diff = read(dir.path(), "surface_closed_form_spatial_diff.csv");
    assert!(diff.starts_with("t,max_abs_diff\n"));
}

#[test]
fn surface_pole_exits_two_without_files() {
    let dir = tempfile::tempdir().unwrap();
    let o =
        fkpp(dir.path(), "r = 1\nnx = 64\nnt = 17\nic_sigma = 0.2\n", &["surface", "--method", "rational_spectral"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("pole"));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn iterate_default_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = fkpp(dir.path(), "", &["iterate"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("iterate verdict="));
    let table = read(dir.path(), "decay.csv");
    assert!(table.starts_with("n,t,max_abs_P\n"));
    assert_eq!(table.lines().count(), 1 + 6 * 5);
    assert!(read(dir.path(), "decay_spatial.csv").starts_with("n,t,max_abs_p\n"));
}

#[test]
fn iterate_linear_is_no_collapse() {
    let dir = tempfile::tempdir().unwrap();
    let o = fkpp(dir.path(), &format!("{SMALL}r = 0\n"), &["iterate"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict=no_collapse"));
}

#[test]
fn iterate_usage_and_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = fkpp(dir.path(), "max_n = 1\n", &["iterate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("max_n"));

    let o = fkpp(
        dir.path(),
        "r = 0.45\nt_max = 6\nnt = 1201\nnx = 64\nic_sigma = 0.2\nmax_n = 8\nprobe_times = 0, 1, 6\n",
        &["iterate"],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("stopped early"));
    let table = read(dir.path(), "decay.csv");
    let rows = table.lines().count() - 1;
    assert!((3..8 * 3).contains(&rows), "{rows}");
}

#[test]
fn audit_report_covers_registry() {
    let dir = tempfile::tempdir().unwrap();
    let o = fkpp(dir.path(), SMALL, &["audit"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let jsonl = read(dir.path(), "report.jsonl");
    let records: Vec<Value> = jsonl.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), REGISTRY.len());
    for (rec, spec) in records.iter().zip(REGISTRY) {
        assert_eq!(rec["claim_id"], spec.id);
        for key in ["holds", "max_violation", "tolerance", "coordinates"] {
            assert!(rec.get(key).is_some(), "{key}");
        }
        assert!(["holds", "fails", "not_applicable"].contains(&rec["status"].as_str().unwrap()));
    }
    let text = read(dir.path(), "report.txt");
    assert!(REGISTRY.iter().all(|c| text.contains(c.id)));
    assert!(read(dir.path(), "timings.csv").starts_with("claim_id,seconds\n"));
}

#[test]
fn audit_linear_marks_nonlinear_claims() {
    let dir = tempfile::tempdir().unwrap();
    let o = fkpp(dir.path(), &format!("{SMALL}r = 0\n"), &["audit"]);
    assert_eq!(o.status.code(), Some(0));
    let jsonl = read(dir.path(), "report.jsonl");
    for (line, spec) in jsonl.lines().zip(REGISTRY) {
        let rec: Value = serde_json::from_str(line).unwrap();
        assert_eq!(rec["status"] == "not_applicable", spec.nonlinear, "{}", spec.id);
    }
}

#[test]
fn coarse_audit_flags_grid_limited_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let o = fkpp(dir.path(), "nx = 32\nnt = 17\nic_sigma = 0.4\nmax_n = 2\n", &["audit"]);
    assert_eq!(o.status.code(), Some(0));
    let jsonl = read(dir.path(), "report.jsonl");
    let resolvent: Value = jsonl
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .find(|r| r["claim_id"] == "transform_pair_resolvent")
        .unwrap();
    assert_eq!(resolvent["holds"], false);
    assert!(resolvent["note"].as_str().unwrap().contains("grid-limited"));
}

#[test]
fn audit_is_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        assert_eq!(fkpp(d.path(), SMALL, &["audit"]).status.code(), Some(0));
        assert_eq!(fkpp(d.path(), SMALL, &["surface"]).status.code(), Some(0));
    }
    for f in ["report.txt", "report.jsonl", "surface_first_order_spectral.csv"] {
        assert_eq!(read(a.path(), f), read(b.path(), f), "{f}");
    }
}

#[test]
fn compare_sweep_and_blowup() {
    let dir = tempfile::tempdir().unwrap();
    let o = fkpp(dir.path(), "", &["compare"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("sweep_monotone=true"));
    assert!(read(dir.path(), "compare.csv").starts_with("t,max_abs,l2\n"));
    assert_eq!(read(dir.path(), "compare_sweep.csv").lines().count(), 4);

    let o = fkpp(dir.path(), "r = 20\nnx = 128\nnt = 65\nic_sigma = 0.1\n", &["compare"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("step"), "{}", stderr(&o));
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = fkpp(dir.path(), "D = -1\n", &["audit"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("D > 0") && stderr(&o).contains("line 1"));
    let o = fkpp(dir.path(), "nx = 1000\n", &["surface"]);
    assert_eq!(o.status.code(), Some(1));
    let o = fkpp(dir.path(), "colour = red\n", &["surface"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("colour"));
    let o = fkpp(dir.path(), "", &["surface", "--method", "spline"]);
    assert_eq!(o.status.code(), Some(1));
    let o = fkpp(dir.path(), "", &["launch"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn in_process_run_matches_binary_contract() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    assert_eq!(fkpp_cli::run(["fkpp", "--version"], &mut out, &mut err), 0);
    assert!(String::from_utf8(out).unwrap().starts_with("fkpp "));
    let mut out = Vec::new();
    assert_eq!(fkpp_cli::run(["fkpp"], &mut out, &mut err), 1);
}
