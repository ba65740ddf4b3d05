//! Browser bindings. Every export takes plain text and returns a JSON
//! string; failures come back as `{"error": ..., "message": ...}`.

use dgt_core::json;
use wasm_bindgen::prelude::*;

fn finish(r: dgt_core::Result<serde_json::Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json::error_json(&e).to_string(),
    }
}

fn names(params: &str) -> Vec<String> {
    params
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// Hypergeometric solutions of an operator written in `s`.
#[wasm_bindgen]
pub fn hyper(op: &str, params: &str, algebraic: bool) -> String {
    finish(json::hyper(op, &names(params), algebraic))
}

/// Relation lattice of rational functions, one per line.
#[wasm_bindgen]
pub fn zlattice(entries: &str, ell: u32, params: &str) -> String {
    let list: Vec<String> = entries
        .lines()
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect();
    finish(json::zlattice(&list, ell, &names(params)))
}

/// Specialization report for a system file; assignments like `t=7, u=1/2`.
#[wasm_bindgen]
pub fn report(system: &str, assign: &str) -> String {
    let assign = names(assign);
    finish(json::load_system(system).and_then(|s| json::report(&s, &assign)))
}
