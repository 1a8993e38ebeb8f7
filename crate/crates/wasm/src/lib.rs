//! Browser bindings. Every exported function takes plain strings and numbers
//! and returns a JSON document; the pure-Rust versions live in [`api`] so
//! they can be tested natively.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use wasm_bindgen::prelude::*;

pub mod api;

/// Root of the gap function plus solver diagnostics.
#[wasm_bindgen]
pub fn solve(problem: &str, params: &str) -> Result<String, JsError> {
    api::solve(problem, params).map_err(|e| JsError::new(&e))
}

/// Left-hand side sampled on `[0, r_max]`, class bound and extremal map.
#[wasm_bindgen]
pub fn lhs_curve(problem: &str, params: &str, samples: usize) -> Result<String, JsError> {
    api::lhs_curve(problem, params, samples).map_err(|e| JsError::new(&e))
}

/// Radius as one parameter runs over `lo..=hi` in `steps` intervals.
#[wasm_bindgen]
pub fn sweep(
    problem: &str,
    params: &str,
    param: &str,
    lo: f64,
    hi: f64,
    steps: usize,
) -> Result<String, JsError> {
    api::sweep(problem, params, param, lo, hi, steps).map_err(|e| JsError::new(&e))
}

/// Parameter names for a problem, as a JSON array.
#[wasm_bindgen]
pub fn parameter_names(problem: &str) -> Result<String, JsError> {
    api::parameter_names(problem).map_err(|e| JsError::new(&e))
}
