use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use altiset::io;

fn dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altiset"))
        .args(args)
        .current_dir(dir("fixtures"))
        .env_remove("ALTISET_GRID")
        .output()
        .expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("altiset_relation.json", &["altiset", "--relation", "cycle3.json"]),
    ("altiset_system.json", &["altiset", "--system", "system.json", "--subset", "0,1,3,4"]),
    (
        "altiset_csv.json",
        &["altiset", "--csv", "triangles.csv", "--gain", "sixteen_area_squared", "--price", "perimeter", "--label", "name"],
    ),
    ("layers.json", &["layers", "--relation", "chain3.json", "--chain", "ulu"]),
    ("correlate.json", &["correlate", "points_mixed.csv"]),
    ("collective.json", &["collective", "collective.json", "--method", "pairwise"]),
    ("skyline.json", &["skyline", "summits.csv", "--ref", "0,0", "--method", "circular"]),
    ("evolve.json", &["evolve", "evolve.csv", "--grid", "16x16"]),
];

#[test]
fn golden_outputs() {
    for (golden, args) in GOLDEN {
        let mut full = vec!["--no-timestamp"];
        full.extend_from_slice(args);
        let out = run(&full);
        assert!(out.status.success(), "{args:?}: {}", stderr(&out));
        let expected = std::fs::read_to_string(dir("golden").join(golden)).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "{golden}");
    }
}

#[test]
fn output_is_deterministic_and_timestamp_is_optional() {
    let args = ["skyline", "summits.csv", "--ref", "0,0", "--method", "contour"];
    let stamped = run(&args);
    let value: serde_json::Value = serde_json::from_slice(&stamped.stdout).unwrap();
    assert!(value["meta"]["timestamp"].is_u64());
    let a = run(&[&["--no-timestamp"], &args[..]].concat());
    let b = run(&[&args[..], &["--no-timestamp"]].concat());
    assert_eq!(a.stdout, b.stdout);
    let value: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(value["meta"].get("timestamp").is_none());
}

#[test]
fn documented_examples() {
    let json = |args: &[&str]| -> serde_json::Value {
        let out = run(args);
        assert!(out.status.success(), "{}", stderr(&out));
        serde_json::from_slice(&out.stdout).unwrap()
    };
    assert_eq!(json(&["altiset", "--relation", "cycle3.json"])["result"]["altiset"], serde_json::json!([]));
    assert_eq!(json(&["correlate", "points_increasing.csv"])["result"]["epsilon"], serde_json::json!(1.0));
    let layers = json(&["layers", "--relation", "chain3.json"]);
    assert_eq!(layers["result"]["d"], 3);
    assert_eq!(layers["result"]["upper_index"], serde_json::json!([3, 2, 1]));
    let records = json(&["skyline", "series.csv", "--method", "records"]);
    assert_eq!(records["result"]["altiset"], serde_json::json!([0, 1, 3]));
    for method in ["oracle", "circular", "contour", "recursive"] {
        let sky = json(&["skyline", "summits.csv", "--ref", "0,0", "--method", method, "--block-size", "2"]);
        assert_eq!(sky["result"]["altiset"], serde_json::json!([0, 1, 3, 4]), "{method}");
    }
}

#[test]
fn output_and_trace_files() {
    let tmp = tempfile::tempdir().unwrap();
    let out_path = tmp.path().join("out.json");
    let trace_path = tmp.path().join("trace.json");
    let out = run(&[
        "--no-timestamp",
        "--output",
        out_path.to_str().unwrap(),
        "evolve",
        "evolve.csv",
        "--grid",
        "16x16",
        "--trace",
        trace_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let golden = |name: &str| std::fs::read_to_string(dir("golden").join(name)).unwrap();
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), golden("evolve.json"));
    assert_eq!(std::fs::read_to_string(&trace_path).unwrap(), golden("evolve_trace.json"));
}

#[test]
fn grid_environment_variable() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_altiset"))
        .args(["--no-timestamp", "evolve", "evolve.csv"])
        .current_dir(dir("fixtures"))
        .env("ALTISET_GRID", "16x16")
        .output()
        .unwrap();
    assert!(with_env.status.success());
    let expected = std::fs::read_to_string(dir("golden").join("evolve.json")).unwrap();
    assert_eq!(String::from_utf8(with_env.stdout).unwrap(), expected);
}

#[test]
fn fixtures_round_trip() {
    let read = |name: &str| std::fs::read_to_string(dir("fixtures").join(name)).unwrap();
    for name in ["cycle3.json", "chain3.json"] {
        let rel = io::parse_relation(&read(name)).unwrap();
        assert_eq!(io::parse_relation(&io::emit_relation(&rel)).unwrap(), rel);
    }
    let system = io::parse_order_system(&read("system.json")).unwrap();
    assert_eq!(io::parse_order_system(&io::emit_order_system(&system)).unwrap(), system);
    let specs = [
        io::ColumnSpec { column: "sixteen_area_squared".into(), direction: altiset::induced::Direction::Gain },
        io::ColumnSpec { column: "perimeter".into(), direction: altiset::induced::Direction::Price },
    ];
    let csv_system = io::parse_order_csv(&read("triangles.csv"), &specs, Some("name")).unwrap();
    assert_eq!(io::parse_order_system(&io::emit_order_system(&csv_system)).unwrap().orders(), csv_system.orders());
    for name in ["points_increasing.csv", "points_mixed.csv"] {
        let pts = io::parse_points_csv(&read(name)).unwrap();
        assert_eq!(io::parse_points_csv(&io::emit_points_csv(&pts)).unwrap(), pts);
    }
    for name in ["summits.csv", "series.csv", "evolve.csv"] {
        let table = io::parse_summits_csv(&read(name)).unwrap();
        assert_eq!(io::parse_summits_csv(&io::emit_summits_csv(&table)).unwrap(), table);
    }
    let family = io::parse_collective(&read("collective.json")).unwrap();
    assert_eq!(io::parse_collective(&io::emit_collective(&family)).unwrap(), family);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let t = tmp.path();
    let code = |args: &[&str]| run(args).status.code().unwrap();

    // domain errors
    assert_eq!(code(&["layers", "--relation", "cycle3.json"]), 1);
    let dup = write(t, "dup.csv", "1,2\n3,4\n1,2\n");
    assert_eq!(code(&["correlate", &dup]), 1);
    let single = write(t, "single.csv", "1,2\n");
    assert_eq!(code(&["correlate", &single]), 1);
    let right = write(t, "right.csv", "5,1\n");
    assert_eq!(code(&["skyline", &right, "--ref", "0", "--left-restricted"]), 1);
    assert_eq!(code(&["skyline", "summits.csv", "--method", "records"]), 1);

    // parse and I/O errors
    let bad_json = write(t, "bad.json", "{\"size\": 2,\n \"pairs\": [[0, 1],\n]}");
    let out = run(&["altiset", "--relation", &bad_json]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
    let range = write(t, "range.json", "{\"size\": 2,\n \"pairs\": [[0, 7]]}");
    let out = run(&["altiset", "--relation", &range]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2") && stderr(&out).contains("pairs[0]"), "{}", stderr(&out));
    let bad_csv = write(t, "bad.csv", "x,y\n1,2\n3,four\n");
    let out = run(&["correlate", &bad_csv]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
    assert_eq!(code(&["correlate", "no-such-file.csv"]), 2);
    let ragged = write(t, "ragged.csv", "1,2,3\n1,2\n");
    assert_eq!(code(&["skyline", &ragged, "--ref", "0,0"]), 2);
    let unknown = write(t, "unknown.json", "{\"elements\": [\"a\"], \"h\": {\"a\": 1}, \"family\": [[\"z\"]]}");
    assert_eq!(code(&["collective", &unknown]), 2);

    // usage errors
    assert_eq!(code(&["frobnicate"]), 64);
    assert_eq!(code(&[]), 64);
    assert_eq!(code(&["altiset"]), 64);
    assert_eq!(code(&["altiset", "--relation", "cycle3.json", "--system", "system.json"]), 64);
    assert_eq!(code(&["evolve", "evolve.csv", "--grid", "0x4"]), 64);
    assert_eq!(code(&["evolve", "evolve.csv", "--inflate", "-1"]), 64);
    assert_eq!(code(&["skyline", "summits.csv", "--ref", "0,0", "--block-size", "0"]), 64);
    assert_eq!(code(&["skyline", "summits.csv"]), 64);
    assert_eq!(code(&["skyline", "summits.csv", "--ref", "1"]), 64);
    assert_eq!(code(&["layers", "--relation", "chain3.json", "--chain", "uxu"]), 64);
    assert_eq!(code(&["altiset", "--csv", "triangles.csv"]), 64);

    // help and version
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["skyline", "--help"]), 0);
}

#[test]
fn help_documents_every_flag() {
    let out = run(&["evolve", "--help"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for flag in ["--grid", "--inflate", "--max-steps", "--trace", "--output", "--no-timestamp", "ALTISET_GRID"] {
        assert!(text.contains(flag), "{flag} missing from help");
    }
}
