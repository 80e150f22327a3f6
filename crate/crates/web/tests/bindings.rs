use serde_json::Value;
use twb_web::{explore_json, extension_json, torus_json};

fn value(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn torus_cat_map() {
    let v = value(torus_json(r#"{"matrix":[[2,1],[1,1]]}"#, 5));
    assert_eq!(v["sequence"], serde_json::json!(["1", "5", "16", "45", "121"]));
    assert_eq!(v["congruence"]["passes"], true);
}

#[test]
fn torus_with_eigenvalue_one() {
    let v = value(torus_json(r#"{"matrix":[[1,1],[0,1]]}"#, 2));
    assert_eq!(v["sequence"], serde_json::json!(["infinite", "infinite"]));
    assert_eq!(v["congruence"]["entries"][0]["passes"], Value::Null);
}

#[test]
fn extension_example() {
    let v = value(extension_json(r#"{"theta":[[2,1],[1,1]],"B":[[0,1],[-1,0]],"eps":-1}"#, 2));
    assert_eq!(v["R"], "4");
    assert_eq!(v["sequence"], serde_json::json!(["4", "infinite"]));
    assert_eq!(v["representatives"].as_array().unwrap().len(), 4);
}

#[test]
fn explore_s3() {
    let v = value(explore_json(r#"{"kind":"builtin","name":"symmetric","params":[3]}"#, 4));
    assert_eq!(v["order"], 6);
    let pairs = v["pairs"].as_array().unwrap();
    // six automorphisms, three projections onto a ℤ₂, the trivial map
    assert_eq!(pairs.len(), 10);
    assert!(pairs.iter().all(|p| p["R"] == p["S"] && p["congruences"] == true));
}

#[test]
fn errors_are_messages() {
    assert!(explore_json("{", 3).is_err());
    assert!(explore_json(r#"{"kind":"builtin","name":"symmetric","params":[5]}"#, 3).unwrap_err().contains("cap of 32"));
    assert!(torus_json(r#"{"matrix":[[1,2,3]]}"#, 3).is_err());
    assert!(extension_json(r#"{"theta":[[2,0],[0,1]],"B":[[1,0],[0,1]],"eps":1}"#, 3).is_err());
}
