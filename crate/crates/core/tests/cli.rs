use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn torheight(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torheight")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, v: &Value) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_vec(v).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn result(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn pieces(ps: &[(&[&str], &str)]) -> Value {
    json!({"pieces": ps.iter().map(|(s, c)| json!({"slope": s, "constant": c})).collect::<Vec<_>>()})
}

#[test]
fn local_height_example() {
    let dir = TempDir::new().unwrap();
    let input = json!({
        "support": pieces(&[(&["0"], "0"), (&["1"], "0")]),
        "metric": pieces(&[(&["0"], "1"), (&["1"], "0")]),
    });
    let r = result(&torheight(&["local-height", "--input", &write(&dir, "p1.json", &input)]));
    assert_eq!(r["payload"]["value"], "-1");
    assert_eq!(r["payload"]["exact"], true);
    assert_eq!(r["command"], "local-height");
    assert_eq!(r["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn metric_mismatch_is_a_computation_error() {
    let dir = TempDir::new().unwrap();
    let input = json!({
        "support": pieces(&[(&["0"], "0"), (&["1"], "0")]),
        "metric": pieces(&[(&["0"], "1"), (&["2"], "0")]),
    });
    let out = torheight(&["local-height", "--input", &write(&dir, "bad.json", &input)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a metric"));
}

#[test]
fn degree_of_the_square() {
    let dir = TempDir::new().unwrap();
    let input = json!({"support": {"polytope": [["0", "0"], ["1", "0"], ["0", "1"], ["1", "1"]]}});
    let r = result(&torheight(&["degree", "--input", &write(&dir, "p2.json", &input)]));
    assert_eq!(r["payload"]["value"], "2");
    assert_eq!(r["payload"]["ample"], true);
}

#[test]
fn check_with_seed_passes() {
    let r = result(&torheight(&["check", "--seed", "7"]));
    assert_eq!(r["payload"]["passed"], true);
    let names: Vec<&str> = r["payload"]["properties"].as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["involution", "mass", "a21", "scaling-law", "product-formula-invariance"]);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(torheight(&["nonsense"]).status.code(), Some(2));
    assert_eq!(torheight(&["hull", "--input", "/no/such/file"]).status.code(), Some(2));
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{not json").unwrap();
    assert_eq!(torheight(&["hull", "--input", junk.to_str().unwrap()]).status.code(), Some(2));
    let schema = write(&dir, "schema.json", &json!({"pieces": [{"slope": "oops"}]}));
    assert_eq!(torheight(&["ma", "--input", &schema]).status.code(), Some(2));
    let messages: Vec<String> = [
        torheight(&["nonsense"]),
        torheight(&["hull", "--input", "/no/such/file"]),
        torheight(&["hull", "--input", junk.to_str().unwrap()]),
    ]
    .iter()
    .map(|o| String::from_utf8_lossy(&o.stderr).into_owned())
    .collect();
    assert!(messages[0] != messages[1] && messages[1] != messages[2]);
}

#[test]
fn hull_dual_ma_payloads_round_trip() {
    let dir = TempDir::new().unwrap();
    let pts = json!({"points": [["0", "0"], ["2", "0"], ["0", "2"], ["1/2", "1/2"]]});
    let hull = result(&torheight(&["hull", "--input", &write(&dir, "pts.json", &pts)]));
    let vol = result(&torheight(&["volume", "--input", &write(&dir, "hull.json", &hull["payload"])]));
    assert_eq!(vol["payload"]["value"], "2");

    let f = pieces(&[(&["0", "0"], "0"), (&["1", "0"], "0"), (&["0", "1"], "1/2")]);
    let lift = result(&torheight(&["dual", "--input", &write(&dir, "f.json", &f)]));
    let back = result(&torheight(&["dual", "--input", &write(&dir, "lift.json", &lift["payload"])]));
    let again = result(&torheight(&["dual", "--input", &write(&dir, "f2.json", &back["payload"])]));
    assert_eq!(again["payload"]["lift"], lift["payload"]["lift"]);

    let ma = result(&torheight(&["ma", "--input", &write(&dir, "f3.json", &back["payload"])]));
    assert_eq!(ma["payload"]["total_mass"], "1/2");
    torheight::json::measure_from_json(&ma["payload"]).expect("ma payload re-parses");
}

#[test]
fn payloads_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let inst = json!({"dimension": 1, "exponents": [[0], [1]], "places": [
        {"kind": "finite", "id": "p", "weight": "1", "height": "1", "orders": [0, -1]},
        {"kind": "circle", "id": "v", "weight": "1", "length": "1", "lambdas": [[["0", "0"]], [["0", "0"], ["1/2", "1/2"]]]}
    ]});
    let path = write(&dir, "ell.json", &inst);
    let a = result(&torheight(&["global-height", "--input", &path]));
    let b = result(&torheight(&["global-height", "--input", &path]));
    assert_eq!(serde_json::to_string(&a["payload"]).unwrap(), serde_json::to_string(&b["payload"]).unwrap());
    assert_eq!(a["payload"]["exact_total"], "5/4");
    assert_eq!(a["payload"]["total"].to_string(), "1.2500000000000000e+0");
}

#[test]
fn emit_roof_rows() {
    let dir = TempDir::new().unwrap();
    let inst = json!({"dimension": 1, "exponents": [[0], [1], [2]], "places": [
        {"kind": "point", "id": "w", "weight": "1", "lambdas": ["0", "1", "0"]},
        {"kind": "point", "id": "z", "weight": "1", "lambdas": ["0", "0", "0"]}
    ]});
    let path = write(&dir, "tent.json", &inst);
    let out = torheight(&["emit-roof", "--input", &path, "--place", "w", "--resolution", "2"]);
    assert!(out.status.success());
    let rows: Vec<String> = String::from_utf8(out.stdout).unwrap().lines().map(str::to_owned).collect();
    assert_eq!(rows[0], "m1,theta");
    let thetas: Vec<&str> = rows[1..].iter().map(|r| r.split(',').nth(1).unwrap()).collect();
    assert_eq!(thetas, ["0.000000000000", "0.500000000000", "1.000000000000", "0.500000000000", "0.000000000000"]);

    let zero = torheight(&["emit-roof", "--input", &path, "--place", "z", "--resolution", "2"]);
    let text = String::from_utf8(zero.stdout).unwrap();
    assert!(text.lines().skip(1).all(|r| r.ends_with(",0.000000000000")));

    let unknown = torheight(&["emit-roof", "--input", &path, "--place", "nope"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("unknown place"));
}

#[test]
fn output_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let pts = write(&dir, "pts.json", &json!({"vertices": [["0"], ["3"]]}));
    let target = dir.path().join("out.csv");
    let out = torheight(&["volume", "--input", &pts, "--format", "csv", "--output", target.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(Path::new(&target)).unwrap(), "volume,relative_volume,dim\n3,3,1\n");
}

#[test]
fn check_reports_input_properties() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", &pieces(&[(&["0"], "0"), (&["1"], "0"), (&["2"], "-1")]));
    let r = result(&torheight(&["check", "--seed", "3", "--input", &f]));
    let first = &r["payload"]["properties"][0];
    assert_eq!(first["name"], "input-involution");
    assert_eq!(first["passed"], true);
}
