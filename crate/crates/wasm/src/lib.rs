//! Browser bindings: three operations with JSON strings in and out.

use serde_json::Value;
use wasm_bindgen::prelude::*;

use fillmore::counterexample::verify_brewer_obstruction;
use fillmore::json::{brewer_to_json, certificate_to_json, decision_to_json, parse_gamma, to_canonical_string, AnyMatrix};
use fillmore::matrix::{verify_certificate, Matrix};
use fillmore::prescribe::{decide_2x2, prescribe_zsim};
use fillmore::ring::Integer;

fn integer_matrix(text: &str) -> Result<Matrix<Integer>, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("matrix JSON: {e}"))?;
    match AnyMatrix::from_json(&v).map_err(|e| e.to_string())? {
        AnyMatrix::Z(a) => Ok(a),
        other => Err(format!("expected an integer matrix, got ring {}", other.tag())),
    }
}

pub fn zsim_json(matrix: &str, gamma: &str, seed: u64) -> Result<String, String> {
    let a = integer_matrix(matrix)?;
    let target = parse_gamma(gamma, &()).map_err(|e| e.to_string())?;
    let c = prescribe_zsim(&a, &target, seed).map_err(|e| e.to_string())?;
    if !verify_certificate(&a, &c) {
        return Err("certificate failed verification".into());
    }
    Ok(to_canonical_string(&certificate_to_json(&a, &c)))
}

pub fn decide_json(matrix: &str, gamma: &str, bound: u64) -> Result<String, String> {
    let a = integer_matrix(matrix)?;
    let target = parse_gamma(gamma, &()).map_err(|e| e.to_string())?;
    let d = decide_2x2(&a, &target, bound).map_err(|e| e.to_string())?;
    Ok(to_canonical_string(&decision_to_json(&a, &d)))
}

pub fn counterexample_json() -> Result<String, String> {
    let v = verify_brewer_obstruction().map_err(|e| e.to_string())?;
    Ok(to_canonical_string(&brewer_to_json(&v)))
}

/// Unimodular `g` with `g·A·g⁻¹` carrying the diagonal `gamma`.
#[wasm_bindgen]
pub fn prescribe_zsim_json(matrix: &str, gamma: &str, seed: u32) -> Result<String, JsValue> {
    zsim_json(matrix, gamma, seed.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn decide_2x2_json(matrix: &str, gamma: &str, bound: u32) -> Result<String, JsValue> {
    decide_json(matrix, gamma, bound.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn counterexample_report() -> Result<String, JsValue> {
    counterexample_json().map_err(|e| JsValue::from_str(&e))
}
