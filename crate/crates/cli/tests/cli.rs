use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use squaretiled::{Origami, OrigamiClass};

const TORUS: &str = "n=1\nh=()\nv=()\nmark_all_vertices=true\n";
const L_TROMINO: &str = "n=3\nh=(1 2)\nv=(1 3)\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_squaretiled"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn analyze_torus_passes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "torus.origami", TORUS);
    let out = run(&["analyze", &f]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["signature"]["mu"], 1);
    assert_eq!(report["kernel"]["order"], 2);
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
}

#[test]
fn analyze_writes_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "l.origami", L_TROMINO);
    let json = dir.path().join("l.json");
    let out = run(&[
        "analyze",
        &f,
        "--slopes",
        "0,inf,1/2,-2",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(report["signature"]["mu"], 3);
    let slopes: Vec<_> = report["directions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["slope"].clone())
        .collect();
    assert_eq!(slopes, ["0/1", "inf", "1/2", "-2/1"]);
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.origami", "n=3\nh=(1 2\nv=(1 3)\n");
    assert_eq!(code(&run(&["analyze", &bad])), 2);
    let intransitive = write(dir.path(), "split.origami", "n=2\nh=()\nv=()\n");
    assert_eq!(code(&run(&["analyze", &intransitive])), 2);
    let unstable = write(dir.path(), "t.origami", "n=1\nh=()\nv=()\n");
    assert_eq!(code(&run(&["analyze", &unstable])), 2);
    let ok = write(dir.path(), "ok.origami", TORUS);
    assert_eq!(code(&run(&["analyze", &ok, "--slopes", "1/0/2"])), 2);
}

#[test]
fn orbit_cap_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "l.origami", L_TROMINO);
    assert_eq!(code(&run(&["analyze", &f, "--max-orbit", "1"])), 3);
    assert_eq!(code(&run(&["analyze", &f, "--max-orbit", "3"])), 0);
}

#[test]
fn landau_values() {
    let out = run(&["landau", "10"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("G(10) = 30"));
    assert!(stdout(&out).contains("smaller: exp(m/e)"));
    assert!(stdout(&run(&["landau", "0"])).contains("G(0) = 1"));
    assert!(stdout(&run(&["landau", "28"])).contains("smaller: Massias"));
}

#[test]
fn bounds_values_and_rejection() {
    let out = run(&["bounds", "1", "1", "0", "3", "--nu", "2,3,inf"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let value = |key: &str| -> f64 {
        let line = text.lines().find(|l| l.starts_with(key)).unwrap();
        line.split(" = ").nth(1).unwrap().parse().unwrap()
    };
    assert!((value("thm31_bound") - 2098.9).abs() < 0.1);
    assert!((value("thm32_rhs") - 13.18).abs() < 0.01);
    assert!((value("simple_js_bound") - 201.06).abs() < 0.01);

    assert_eq!(code(&run(&["bounds", "0", "4", "0", "3"])), 0);
    assert_eq!(code(&run(&["bounds", "0", "1", "0", "1"])), 2);
    assert_eq!(
        code(&run(&["bounds", "1", "1", "0", "3", "--nu", "2,3"])),
        2
    );
}

#[test]
fn gen_writes_one_file_per_class() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["gen", "1", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);

    let dir3 = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&run(&["gen", "3", "--out", dir3.path().to_str().unwrap()])),
        0
    );
    let l_class = OrigamiClass::of(&Origami::parse(L_TROMINO).unwrap());
    let classes: Vec<OrigamiClass> = fs::read_dir(dir3.path())
        .unwrap()
        .map(|e| {
            OrigamiClass::of(
                &Origami::parse(&fs::read_to_string(e.unwrap().path()).unwrap()).unwrap(),
            )
        })
        .collect();
    assert!(classes.contains(&l_class));
    assert_eq!(classes.len(), squaretiled::catalog::classes_up_to(3).len());

    assert_eq!(code(&run(&["gen", "9"])), 2);
}

#[test]
fn batch_empty_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["batch", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0 files"));
}

#[test]
fn batch_takes_max_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a_bad.origami", "n=2\nh=(1 2)(1)\nv=()\n");
    write(dir.path(), "b_torus.origami", TORUS);
    let out_dir = tempfile::tempdir().unwrap();
    let json = out_dir.path().join("batch.json");
    let out = run(&[
        "batch",
        dir.path().to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("2 files, 1 pass, 0 fail, 1 errors"));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let files: Vec<_> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["file"].clone())
        .collect();
    assert_eq!(files, ["a_bad.origami", "b_torus.origami"]);
}

#[test]
fn batch_catalog_passes_and_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("catalog");
    assert_eq!(code(&run(&["gen", "4", "--out", cat.to_str().unwrap()])), 0);
    let mut docs = Vec::new();
    for jobs in ["1", "4"] {
        let json = dir.path().join(format!("out{jobs}.json"));
        let out = run(&[
            "batch",
            cat.to_str().unwrap(),
            "--mark-all-vertices",
            "--slope-bound",
            "3",
            "--jobs",
            jobs,
            "--json",
            json.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", stdout(&out));
        docs.push(fs::read(json).unwrap());
    }
    assert_eq!(docs[0], docs[1]);
}
