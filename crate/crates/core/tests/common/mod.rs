//! Frozen extended-precision reference data shared by the integration tests.

#![allow(dead_code)]

use serde_json::Value;
use thetakit::Complex64;

pub fn oracles() -> Value {
    let raw = include_str!("../data/oracles.json");
    serde_json::from_str(raw).expect("oracles.json parses")
}

pub fn real(v: &Value) -> f64 {
    v.as_str().expect("numbers are stored as strings").parse().expect("valid float")
}

pub fn pair(v: &Value) -> Complex64 {
    Complex64::new(real(&v[0]), real(&v[1]))
}

/// `(z, Theta_3(z))` for the stored small-`Im z` points.
pub fn small_im_points() -> Vec<(Complex64, Complex64)> {
    let o = oracles();
    o["theta3_small_im"]
        .as_array()
        .expect("array")
        .iter()
        .map(|p| (pair(&p["z"]), pair(&p["theta3"])))
        .collect()
}
