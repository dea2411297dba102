use mhermite::checks::{reference_tolerance, REFERENCE_LAMBDA_1};
use mhermite::mhermite::WeightSystem;
use mhermite::numerics::{with_precision, Wide};
use mhermite::quadrature::{build_rule, QuadratureRule};

/// Independently converged `lambda_k^{(1)}` for `n = 10`, `c = 15` (12 digits).
const CONVERGED: [f64; 30] = [
    6.88765386477e-9,
    4.38411157788e-6,
    3.59198303415e-4,
    8.1496176189e-3,
    6.83650066584e-2,
    0.241033069373,
    0.372593395993,
    0.245271013051,
    6.04113561032e-2,
    3.80909885798e-3,
    6.75552527891e-6,
    -5.18988371715e-6,
    3.84839252631e-6,
    -2.43463658032e-6,
    1.26179732817e-6,
    -5.20377855612e-7,
    1.65040322188e-7,
    -3.82282106849e-8,
    5.89063578724e-9,
    -4.84055309011e-10,
    1.1053352815e-11,
    -7.56270139962e-12,
    3.79324237643e-12,
    -1.40012082999e-12,
    3.76748021063e-13,
    -7.1932209357e-14,
    9.26048778499e-15,
    -7.3318942446e-16,
    2.97735684663e-17,
    -3.90378065518e-19,
];

fn rule() -> QuadratureRule {
    build_rule(10, &WeightSystem::symmetric(Wide::from_i64(15)).unwrap(), true).unwrap()
}

#[test]
fn converged_values_are_reproduced() {
    let rule = rule();
    for (k, expected) in CONVERGED.iter().enumerate() {
        let got = rule.weights[0][k].to_f64();
        assert!(
            ((got - expected) / expected).abs() < 1e-10,
            "k={}: {got} vs {expected}",
            k + 1
        );
    }
    assert!((rule.nodes()[29].to_f64() - 11.7676340417).abs() < 1e-9);
}

#[test]
fn reference_entries_except_k23_k24_match() {
    let rule = rule();
    for (k, text) in REFERENCE_LAMBDA_1.iter().enumerate() {
        let reference = Wide::parse(text).unwrap().to_f64();
        let rel = ((rule.weights[0][k].to_f64() - reference) / reference).abs();
        let within = rel <= reference_tolerance(reference);
        assert_eq!(within, k + 1 != 23 && k + 1 != 24, "k={} rel={rel:.3e}", k + 1);
    }
}

#[test]
fn weights_are_stable_under_more_precision() {
    let base = rule();
    let finer = with_precision(96, rule);
    for (a, b) in base.weights[0].iter().zip(&finer.weights[0]) {
        let rel = ((a - b) / b).abs();
        assert!(rel.to_f64() < 1e-40);
    }
}
