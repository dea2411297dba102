//! wasm-bindgen bindings used by the static page in `www/`.
//!
//! Every export takes plain numbers and returns a JSON string, so the page
//! needs nothing beyond `JSON.parse`.

use mhermite::asymptotics::{critical_c, Phase, SymmetricModel};
use mhermite::mhermite::{MultiIndex, WeightSystem};
use mhermite::numerics::Wide;
use mhermite::quadrature::build_rule;
use mhermite::zeros::{bounding_intervals, hermite_zeros, zero_interval_counts};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_N: usize = 40;

fn fail(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn shift(x: f64) -> Result<Wide, JsError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(JsError::new("shifts must be a positive number"));
    }
    Ok(Wide::from_f64(x))
}

fn check_n(n: usize) -> Result<(), JsError> {
    if n == 0 || n > MAX_N {
        return Err(JsError::new(&format!("n must lie in 1..={MAX_N}")));
    }
    Ok(())
}

fn system(n: usize, c: f64) -> Result<WeightSystem, JsError> {
    check_n(n)?;
    WeightSystem::symmetric(shift(c)?).map_err(fail)
}

/// Nodes and the three weight vectors of the normalized simultaneous rule.
#[wasm_bindgen]
pub fn quadrature(n: usize, c: f64) -> Result<String, JsError> {
    let w = system(n, c)?;
    let rule = build_rule(n, &w, true).map_err(fail)?;
    let nodes: Vec<f64> = rule.nodes().iter().map(Wide::to_f64).collect();
    let weights: Vec<Vec<f64>> = rule
        .weights
        .iter()
        .map(|l| l.iter().map(Wide::to_f64).collect())
        .collect();
    Ok(json!({"n": n, "c": c, "nodes": nodes, "weights": weights}).to_string())
}

/// Samples of v and the three components of nu over a symmetric window.
#[wasm_bindgen]
pub fn densities(chat: f64, samples: usize) -> Result<String, JsError> {
    let samples = samples.clamp(2, 2000);
    let model = SymmetricModel::new(&shift(chat)?).map_err(fail)?;
    let s = model.support();
    let b = s.b.to_f64();
    let mut xs = Vec::with_capacity(samples);
    let mut v = Vec::with_capacity(samples);
    let three = s.phase == Phase::ThreeInterval;
    let mut nu = vec![Vec::with_capacity(samples); if three { 3 } else { 0 }];
    for i in 0..samples {
        let x = -1.1 * b + 2.2 * b * i as f64 / (samples - 1) as f64;
        xs.push(x);
        v.push(model.density_v_f64(x).map_err(fail)?);
        for (j, col) in nu.iter_mut().enumerate() {
            col.push(model.density_nu_f64(j + 1, x).map_err(fail)?);
        }
    }
    let opt = |x: &Option<Wide>| x.as_ref().map(Wide::to_f64);
    Ok(json!({
        "phase": s.phase.to_string(),
        "c_star": critical_c().to_f64(),
        "a": opt(&s.a),
        "b": b,
        "d": opt(&s.d),
        "x": xs,
        "v": v,
        "nu": nu,
    })
    .to_string())
}

/// Zeros of the diagonal polynomial together with the bounding intervals.
#[wasm_bindgen]
pub fn zeros(n: usize, c: f64) -> Result<String, JsError> {
    let w = system(n, c)?;
    let c = Wide::from_f64(c);
    let (_, z) = hermite_zeros(&MultiIndex::diagonal(n), &w).map_err(fail)?;
    let l = bounding_intervals(n, &c).map_err(fail)?;
    let counts = zero_interval_counts(z.as_slice(), &l);
    let intervals: Vec<Value> = l
        .intervals
        .iter()
        .map(|i| json!([i.lo.to_f64(), i.hi.to_f64()]))
        .collect();
    let zs: Vec<f64> = z.zeros.iter().map(Wide::to_f64).collect();
    Ok(json!({
        "zeros": zs,
        "intervals": intervals,
        "disjoint": l.disjoint,
        "counts": [counts.k1, counts.k2, counts.k3, counts.outside],
    })
    .to_string())
}
