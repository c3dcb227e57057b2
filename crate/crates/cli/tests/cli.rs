use std::fs;
use std::process::{Command, Output};

fn latcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latcalc"))
        .args(args)
        .env_remove("LATCALC_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn config(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn cert_prints_bound_and_degree() {
    let o = latcalc(&["cert", "x1 * x2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[(1, 2)] cert"));
}

#[test]
fn apply_one_gives_identity() {
    let dir = tempfile::tempdir().unwrap();
    let model = config(&dir, "m.cfg", "# three coordinates\nkind = pointwise\ndimension = 3\n");
    let o = latcalc(&["apply", "1", "--model", &model]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[(1, 1, 1)] apply"));
}

#[test]
fn twisted_grid_search_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let model = config(&dir, "m.cfg", "kind = twisted-r2\n");
    let o = latcalc(&["birkhoff", "--model", &model, "--search", "grid"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("[FAIL] birkhoff: x1=(1, -1) x2=(1, 1) left=(1, 0)"), "{out}");
}

#[test]
fn zero_trials_is_a_config_error() {
    let o = latcalc(&["suite", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("trials"));
}

#[test]
fn unknown_key_names_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let model = config(&dir, "bad.cfg", "kind = pointwise\ncolour = red\n");
    let o = latcalc(&["eval", "x1", "--point", "1", "--model", &model]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("bad.cfg:2"), "{err}");
}

#[test]
fn out_writes_tab_separated_records() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.tsv");
    let o = latcalc(&["eval", "max(x1, x2)", "--point", "1/2,-3", "--seed", "7", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let tsv = fs::read_to_string(&path).unwrap();
    let fields: Vec<&str> = tsv.lines().next().unwrap().split('\t').collect();
    assert_eq!(fields.len(), 4);
    assert_eq!((fields[0], fields[1], fields[3]), ("eval", "1/2", "7"));
}

#[test]
fn seed_comes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_latcalc"))
        .args(["parse", "x1"])
        .env("LATCALC_SEED", "42")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("seed: 42"));
}

#[test]
fn hcheck_reads_directions_file() {
    let dir = tempfile::tempdir().unwrap();
    let dirs = config(&dir, "dirs.txt", "1,1\n-1,1/2\n");
    let o = latcalc(&["hcheck", "max(x1, x2 * x2)", "--dirs", &dirs]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS] hcheck"));
}

#[test]
fn suite_output_is_reproducible() {
    let a = latcalc(&["suite", "--trials", "20", "--seed", "3"]);
    let b = latcalc(&["suite", "--trials", "20", "--seed", "3"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("calculus.birkhoff"));
}
