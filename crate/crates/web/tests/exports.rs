use mhermite_web::{densities, quadrature, zeros};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn quadrature_reports_three_weight_vectors() {
    let r = parse(quadrature(10, 15.0).ok().unwrap());
    assert_eq!(r["nodes"].as_array().unwrap().len(), 30);
    let w = r["weights"].as_array().unwrap();
    assert_eq!(w.len(), 3);
    let first = w[0][0].as_f64().unwrap();
    assert!((first - 6.887653865e-9).abs() < 1e-17);
}

#[test]
fn densities_carry_phase_and_vanish_outside() {
    let r = parse(densities(5.0, 11).ok().unwrap());
    assert_eq!(r["phase"], "three-interval");
    assert_eq!(r["v"][0].as_f64(), Some(0.0));
    assert!(r["v"][5].as_f64().unwrap() > 0.0);
    let one = parse(densities(2.0, 11).ok().unwrap());
    assert_eq!(one["phase"], "one-interval");
    assert!(one["a"].is_null());
    assert_eq!(one["nu"].as_array().unwrap().len(), 0);
}

#[test]
fn zeros_come_with_interval_counts() {
    let r = parse(zeros(2, 15.0).ok().unwrap());
    assert_eq!(r["zeros"].as_array().unwrap().len(), 6);
    assert_eq!(r["disjoint"], true);
    let counts: Vec<u64> = r["counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![2, 2, 2, 0]);
}
