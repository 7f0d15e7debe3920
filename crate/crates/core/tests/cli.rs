use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn mdspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdspace"))
        .args(args)
        .output()
        .unwrap()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn x_power(n: u32) -> String {
    format!(r#"{{"dim":1,"terms":[{{"alpha":[{n}],"c":1.0}}]}}"#)
}

#[test]
fn interpolation_examples() {
    let input = format!(
        r#"{{"config":[{{"point":[0.0],"weight":2}}],"f":{}}}"#,
        x_power(3)
    );
    let out = mdspace(&["interp", "--json", &input]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&out)["interpolant"]["terms"].as_array().unwrap().len(),
        0
    );

    let input = format!(
        r#"{{"config":[{{"point":[0.0],"weight":1}},{{"point":[1.0],"weight":1}}],"f":{}}}"#,
        x_power(2)
    );
    let v = json(&mdspace(&["interp", "--json", &input]));
    let terms = v["interpolant"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["alpha"], serde_json::json!([1]));
    assert!((terms[0]["c"].as_f64().unwrap() - 1.0).abs() < 1e-14);
}

#[test]
fn exit_codes() {
    assert_eq!(
        mdspace(&["interp", "--json", "{bad"]).status.code(),
        Some(1)
    );
    let singular = format!(
        r#"{{"config":[{{"point":[0.0],"weight":2}}],"f":{},"basis":[{},{}]}}"#,
        x_power(1),
        x_power(2),
        x_power(3)
    );
    assert_eq!(
        mdspace(&["interp", "--json", &singular]).status.code(),
        Some(2)
    );
    assert_eq!(
        mdspace(&["member", "-i", &data("tilted.json")])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        mdspace(&["member", "-i", &data("curvilinear.json")])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn membership_of_the_curvilinear_point() {
    let v = json(&mdspace(&["member", "-i", &data("curvilinear.json")]));
    assert_eq!(v["verdict"]["status"], "Certified");
    let v = json(&mdspace(&["member", "-i", &data("tilted.json")]));
    assert_eq!(v["verdict"]["condition"], "containment");
}

#[test]
fn collinear_collision() {
    let out = mdspace(&["limit", "-i", &data("collinear.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["certified"], true);
    assert_eq!(
        v["limit"]["config"],
        serde_json::json!([{"point": [0.0, 0.0], "weight": 3}])
    );
}

#[test]
fn gallery_is_certified() {
    let v = json(&mdspace(&["gallery"]));
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 6);
    assert!(
        entries.iter().all(|e| e["report"]["certified"] == true),
        "{v:#}"
    );
}

#[test]
fn output_is_reproducible() {
    for args in [
        vec!["limit", "-i", &data("collinear.json")],
        vec!["probe-injectivity"],
    ] {
        let a = mdspace(&args);
        let b = mdspace(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn selftest_passes() {
    let out = mdspace(&["selftest"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}
