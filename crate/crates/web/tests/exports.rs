use cmv_web::{layout_impl, random_word_impl, residuals_impl};
use serde_json::Value;

const FIXTURE: &str = "[[0.5,0],[0,0]]";

#[test]
fn fixture_layout() {
    let v: Value = serde_json::from_str(&layout_impl(FIXTURE).unwrap()).unwrap();
    let w = v["weights"].as_array().unwrap();
    assert!((w[0].as_f64().unwrap() - 0.75).abs() < 1e-12);
    assert_eq!(v["layout"]["bands"].as_array().unwrap().len(), 2);
    assert_eq!(v["plus"].as_array().unwrap().len(), 2);
}

#[test]
fn residuals_for_rotation() {
    let v: Value = serde_json::from_str(&residuals_impl(FIXTURE, 0.3, 1e-8).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["records"].as_array().unwrap().iter().any(|r| r["formula_id"] == "tr1L"));
}

#[test]
fn random_words_feed_layout() {
    let alpha = random_word_impl(6, 0.9, 3).unwrap();
    let v: Value = serde_json::from_str(&layout_impl(&alpha).unwrap()).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 6);
    assert!(random_word_impl(3, 0.9, 3).is_err());
    assert!(layout_impl("[[2,0],[0,0]]").is_err());
    assert!(layout_impl("[[0,0],[0,0],[0,0]]").is_err());
}
