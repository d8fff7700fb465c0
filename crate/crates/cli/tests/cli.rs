use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cylrsk"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn missing_flag_is_usage_error() {
    let o = run(&["kernels", "schutz", "--y", "1,0", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--x"));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn worked_example_triple() {
    let o = run(&["cyl-rsk", "run", "--input", data("example.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(
        v["P0"],
        serde_json::json!([[1, 1, 1, 1, 1, 1], [2, 2, 2, 2, 4, 7], [3, 3, 5, 5], [4, 4]])
    );
    assert_eq!(
        v["Q"],
        serde_json::json!([[1, 2, 3, 4, 5, 6], [1, 2, 3, 7, 9, 9], [1, 3, 7, 8], [3, 4]])
    );
    assert_eq!(
        v["W"],
        serde_json::json!([[0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 1, 1], [0, 0]])
    );
}

#[test]
fn outputs_round_trip_as_inputs() {
    let input = std::fs::read_to_string(data("example.json")).unwrap();
    let triple = stdout(&run(&[
        "cyl-rsk",
        "run",
        "--input",
        data("example.json").to_str().unwrap(),
    ]));
    let t = scratch("triple.json", &triple);
    let back = stdout(&run(&["cyl-rsk", "invert", "--input", t.to_str().unwrap()]));
    let a: serde_json::Value = serde_json::from_str(&input).unwrap();
    let b: serde_json::Value = serde_json::from_str(&back).unwrap();
    assert_eq!(a, b);

    let pair = stdout(&run(&["rsk", "run", "--input", data("example.json").to_str().unwrap()]));
    let p = scratch("pair.json", &pair);
    let arr: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["rsk", "invert", "--input", p.to_str().unwrap()]))).unwrap();
    assert_eq!(arr["pairs"], a["pairs"]);

    let cgt = stdout(&run(&["gt", "encode", "--input", t.to_str().unwrap()]));
    let g = scratch("cgt.json", &cgt);
    let tab: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["gt", "decode", "--input", g.to_str().unwrap()]))).unwrap();
    let full: serde_json::Value = serde_json::from_str(&triple).unwrap();
    assert_eq!(tab["P0"], full["P0"]);
    let paths = stdout(&run(&["gt", "paths", "--input", g.to_str().unwrap()]));
    let f = scratch("paths.json", &paths);
    assert_eq!(
        stdout(&run(&["gt", "paths", "--invert", "--input", f.to_str().unwrap()])),
        cgt
    );
}

#[test]
fn verify_reports_are_reproducible() {
    let args = ["verify", "all", "--quick", "--seed", "42"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<&str> = std::str::from_utf8(&a.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 13);
    let last: serde_json::Value = serde_json::from_str(lines[12]).unwrap();
    assert_eq!(last["summary"], true);
    assert_eq!(last["failed"], 0);
}

#[test]
fn kernel_csv_has_oracle_columns() {
    let o = run(&[
        "kernels", "periodic", "--n", "2", "--l", "4", "--y", "1,0", "--x", "2,1", "--t", "1", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("y,x,t,value,oracle,residual,terms"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let residual: f64 = row[row.len() - 2].parse().unwrap();
    assert!(residual < 1e-10);
}

#[test]
fn config_file_and_out_flag() {
    let cfg = scratch("config.json", r#"{"seed": 9}"#);
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("sim.ndjson");
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "tasep",
        "simulate",
        "--n",
        "2",
        "--l",
        "4",
        "--steps",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let seeded = run(&[
        "tasep", "simulate", "--n", "2", "--l", "4", "--steps", "10", "--seed", "9",
    ]);
    assert_eq!(std::fs::read(&out).unwrap(), seeded.stdout);
}
