//! Browser bindings. Each export takes plain strings/numbers and returns a
//! JSON string; errors become JS exceptions.

use scheme_spectra::extremal::{analyze_column, predict_extremal};
use scheme_spectra::scanner::explain_coincidences;
use scheme_spectra::schemes::scheme_p_matrix;
use scheme_spectra::SchemeId;
use serde_json::json;
use wasm_bindgen::prelude::*;

pub fn eigenmatrix_json(scheme: &str) -> Result<String, String> {
    let s: SchemeId = scheme.parse().map_err(|e| format!("{e}"))?;
    let m = scheme_p_matrix(&s).map_err(|e| e.to_string())?;
    Ok(json!({ "scheme": s, "d": m.d(), "matrix": m }).to_string())
}

pub fn column_json(scheme: &str, j: usize) -> Result<String, String> {
    let s: SchemeId = scheme.parse().map_err(|e| format!("{e}"))?;
    let a = analyze_column(&s, j).map_err(|e| e.to_string())?;
    Ok(json!({ "analysis": a, "prediction": predict_extremal(&s, j) }).to_string())
}

pub fn coincidences_json(d: u32, q: u32, j: usize) -> Result<String, String> {
    let r = explain_coincidences(d, q, j).map_err(|e| e.to_string())?;
    Ok(json!({ "row": r, "labels": r.labels() }).to_string())
}

/// Eigenmatrix of a scheme such as `hamming:d=4,q=3`.
#[wasm_bindgen]
pub fn eigenmatrix(scheme: &str) -> Result<String, JsError> {
    eigenmatrix_json(scheme).map_err(|e| JsError::new(&e))
}

/// Extremal analysis of column `j`, with the predicted extremal indices.
#[wasm_bindgen]
pub fn column(scheme: &str, j: usize) -> Result<String, JsError> {
    column_json(scheme, j).map_err(|e| JsError::new(&e))
}

/// Coincidence explanations for column `j` of `H(d,q)`.
#[wasm_bindgen]
pub fn coincidences(d: u32, q: u32, j: usize) -> Result<String, JsError> {
    coincidences_json(d, q, j).map_err(|e| JsError::new(&e))
}
