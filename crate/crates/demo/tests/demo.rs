use localic_demo::{galois_check, locale_points, split_by_cover};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn galois_answers() {
    let v = parse(galois_check("S3", "(1 2)"));
    assert_eq!(v["galois"], false);
    assert_eq!(v["closure_points"], 6);
    let v = parse(galois_check("S3", "(1 2 3)"));
    assert_eq!(v["galois"], true);
    assert_eq!(v["automorphisms"], 2);
}

#[test]
fn point_counts() {
    assert_eq!(parse(locale_points("bij", 3, 3))["count"], 6);
    assert_eq!(parse(locale_points("func", 2, 3))["count"], 9);
    assert_eq!(parse(locale_points("rel", 2, 2))["count"], 16);
    assert!(parse(locale_points("rel", 4, 4))["error"].is_string());
}

#[test]
fn split_answers() {
    let v = parse(split_by_cover("S3", "(1 2)"));
    assert_eq!(v["split"].as_array().unwrap().len(), 1);
    let v = parse(split_by_cover("S3", "1"));
    assert_eq!(v["split"].as_array().unwrap().len(), 4);
    let v = parse(split_by_cover("S3", "(1 2 3)"));
    assert_eq!(v["split"].as_array().unwrap().len(), 2);
}

#[test]
fn errors_are_json() {
    assert!(parse(galois_check("S9", "1"))["error"].is_string());
    assert!(parse(galois_check("S3", "(1 2"))["error"].is_string());
}
