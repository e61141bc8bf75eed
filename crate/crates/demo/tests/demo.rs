use serde_json::Value;
use tm_demo::{explore_factor, prefix, weak_schur};

fn explore(word: &str, bound: u32) -> Value {
    serde_json::from_str(&explore_factor(word, bound).unwrap()).unwrap()
}

#[test]
fn prefix_renders() {
    assert_eq!(prefix(16).unwrap(), "0110100110010110");
    assert!(prefix(1 << 20).is_err());
}

#[test]
fn factor_views() {
    let v = explore("010", 100);
    assert_eq!(v["class"], "TwoNotThreeSummable");
    assert_eq!(v["positions"][0], 3);
    assert_eq!(v["endings"], serde_json::json!(["11", "10"]));
    assert_eq!(v["witness"]["terms"], serde_json::json!([3, 15]));

    let v = explore("0110", 100);
    assert_eq!(v["class"], "PrefixOfT_IP");
    assert_eq!(v["witness"]["kind"], "ip");
    assert_eq!(v["ending"], Value::Null);

    let v = explore("1", 100);
    assert_eq!(v["class"], "PrefixOfTbar_InfFSBig");
    assert_eq!(v["witness"]["sum_terms"], 3);

    let v = explore("11", 100);
    assert_eq!(v["class"], "NotTwoSummable");
    assert_eq!(v["witness"], Value::Null);
    assert_eq!(v["endings"], serde_json::json!(["1"]));
}

#[test]
fn bad_input_is_an_error() {
    assert!(explore_factor("000", 100).is_err());
    assert!(explore_factor("01x", 100).is_err());
    assert!(explore_factor("010", 1 << 20).is_err());
    assert!(weak_schur(5, 2, 10).is_err());
}

#[test]
fn weak_schur_view() {
    let v: Value = serde_json::from_str(&weak_schur(2, 2, 12).unwrap()).unwrap();
    assert_eq!(v["threshold"], 9);
    assert_eq!(v["certificate"].as_array().unwrap().len(), 8);
}
