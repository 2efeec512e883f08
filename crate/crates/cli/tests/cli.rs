use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellulo")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn schema_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name)
}

fn assert_valid(schema: &str, text: &str) {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path(schema)).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let instance: Value = serde_json::from_str(text).unwrap();
    let msgs: Vec<String> = match compiled.validate(&instance) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    assert!(msgs.is_empty(), "{schema:?} rejects output: {msgs:?}");
}

#[test]
fn cells_a1_has_two_complete_cells() {
    let text = stdout(&["cells", "--datum", "A1", "--side", "antispherical", "--radius", "16"]);
    assert_valid("cells.schema.json", &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    let complete = v["cells"].as_array().unwrap().iter().filter(|c| c["complete"] == true).count();
    assert_eq!(complete, 2);
}

#[test]
fn cells_bijection_output() {
    let text = stdout(&["cells", "--datum", "A2", "--radius", "6", "--bijection"]);
    assert_valid("cells.schema.json", &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["bijection_2sided_asph"].as_array().unwrap().len(), 3);
    assert_eq!(v["bijection_problems"].as_array().unwrap().len(), 0);
}

#[test]
fn gl_cells_table1_matches_golden() {
    assert_eq!(
        stdout(&["gl-cells", "--a", "2", "--max-terms", "3", "--format", "table1"]),
        "Weight cells for GL_2\n(([2]), •)\n(([1^2]), ([2]), •)\n(([1^2]), ([1^2]), ([2]), •)\n"
    );
    for n in ["2", "3", "4"] {
        let golden = std::fs::read_to_string(format!("{}/../core/golden/gl{n}.txt", env!("CARGO_MANIFEST_DIR"))).unwrap();
        assert_eq!(stdout(&["gl-cells", "--a", n, "--max-terms", "4"]), golden);
    }
}

#[test]
fn json_outputs_validate() {
    let cases: [(&str, &[&str]); 7] = [
        ("basis.schema.json", &["klpoly", "--datum", "A2", "--max-length", "5"]),
        ("basis.schema.json", &["asph-basis", "--datum", "B2", "--max-length", "6"]),
        ("alcove.schema.json", &["alcove", "--datum", "A2", "--ell", "5", "--max-length", "3"]),
        ("alcove.schema.json", &["alcove", "--datum", "GL:2", "--weight=-3,1"]),
        ("gl-cells.schema.json", &["gl-cells", "--a", "1,3", "--max-terms", "3", "--format", "json"]),
        ("orbit-count.schema.json", &["orbit-count", "--datum", "G2", "--format", "json"]),
        ("cells.schema.json", &["cells", "--datum", "GL:2", "--side", "two-sided", "--radius", "5"]),
    ];
    for (schema, args) in cases {
        assert_valid(schema, &stdout(args));
    }
}

#[test]
fn klpoly_a1_values() {
    let v: Value = serde_json::from_str(&stdout(&["klpoly", "--datum", "A1", "--max-length", "3"])).unwrap();
    let map = v.as_object().unwrap();
    assert_eq!(map.len(), 7);
    assert_eq!(v["t[2]"]["t[0]"], "1*v^2");
    assert_eq!(v["t[0]*s1"]["t[0]"], "1*v^1");
}

#[test]
fn orbit_counts() {
    assert_eq!(stdout(&["orbit-count", "--datum", "A2"]), "3\n");
    assert_eq!(stdout(&["orbit-count", "--datum", "GL:2,3"]), "6\n");
}

#[test]
fn deterministic_output() {
    let args = ["cells", "--datum", "B2", "--side", "antispherical", "--radius", "8", "--format", "csv"];
    let first = stdout(&args);
    let threaded = Command::new(env!("CARGO_BIN_EXE_cellulo"))
        .args(args)
        .env("CELLULO_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(first, stdout(&args));
    assert_eq!(first, String::from_utf8(threaded.stdout).unwrap());
}

#[test]
fn writes_to_out_file() {
    let path = std::env::temp_dir().join(format!("cellulo-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let printed = stdout(&["klpoly", "--datum", "A1", "--max-length", "4"]);
    assert_eq!(stdout(&["klpoly", "--datum", "A1", "--max-length", "4", "--out", p]), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), printed);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn config_file_and_datum_file() {
    let dir = std::env::temp_dir();
    let cfg = dir.join(format!("cellulo-cfg-{}.json", std::process::id()));
    std::fs::write(&cfg, r#"{"ell": 3, "ball_radius": 8, "margin": 2, "omega_bound": 1}"#).unwrap();
    let datum = dir.join(format!("cellulo-datum-{}.json", std::process::id()));
    std::fs::write(&datum, r#"{"rank": 1, "simple_roots": [[2]], "simple_coroots": [[1]], "name": "A1"}"#).unwrap();
    let text = stdout(&["cells", "--datum-file", datum.to_str().unwrap(), "--config", cfg.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["radius"], 8);
    assert_eq!(v["ell"], 3);
    std::fs::remove_file(cfg).unwrap();
    std::fs::remove_file(datum).unwrap();
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["cells", "--datum", "A2", "--radius", "4", "--ell", "3"]), Some(2));
    assert_eq!(code(&["cells", "--datum", "Q7", "--radius", "4"]), Some(2));
    assert_eq!(code(&["cells", "--datum", "A1"]), Some(2));
    assert_eq!(code(&["cells", "--datum", "A1", "--radius", "2", "--side", "diagonal"]), Some(2));
    assert_eq!(code(&["gl-cells", "--a", "0"]), Some(2));
    assert_eq!(code(&["orbit-count", "--datum", "A2", "--format", "table1"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["alcove", "--datum", "A1", "--elt", "s2"]), Some(2));
    // computation-level failure: no orbit classification for B3-like data
    let dir = std::env::temp_dir().join(format!("cellulo-b3-{}.json", std::process::id()));
    std::fs::write(
        &dir,
        r#"{"rank": 3, "simple_roots": [[2,-1,0],[-1,2,-2],[0,-1,2]], "simple_coroots": [[1,0,0],[0,1,0],[0,0,1]]}"#,
    )
    .unwrap();
    assert_eq!(code(&["orbit-count", "--datum-file", dir.to_str().unwrap()]), Some(1));
    std::fs::remove_file(dir).unwrap();
}

#[test]
fn check_passes() {
    let out = run(&["check"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_valid("check.schema.json", &text);
    assert_eq!(out.status.code(), Some(0), "{text}");
}
