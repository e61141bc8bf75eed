//! Browser bindings for the static page in `www/`.
//!
//! Each export returns a JSON string. The plain functions carry the logic so
//! they can be tested off the browser.

use serde::Serialize;
use serde_json::json;
use tm_core::partition::weak_schur_search;
use tm_core::{
    classify_factor, ending_pattern, find_k_summable_witness, fsbig_witness_for_tmbar_prefix, ip_witness_for_prefix,
    is_prefix_of_tau_power_aba, occurrence_parity_check, occurrences, tm_prefix, EndingPattern, Factor, FactorClass,
    Nat,
};
use wasm_bindgen::prelude::*;

pub const MAX_PREFIX: usize = 4096;
pub const MAX_BOUND: u32 = 1 << 16;
const SHOWN_POSITIONS: usize = 64;

#[derive(Serialize)]
struct Witness {
    kind: &'static str,
    /// Sums of up to this many distinct terms lie in the occurrence set.
    sum_terms: usize,
    terms: Vec<Nat>,
}

#[derive(Serialize)]
struct FactorView {
    factor: String,
    class: FactorClass,
    tau_power: Option<u32>,
    bound: u32,
    count: usize,
    positions: Vec<Nat>,
    ending: Option<EndingPattern>,
    endings: Vec<String>,
    witness: Option<Witness>,
}

fn to_json<T: Serialize>(x: &T) -> Result<String, String> {
    serde_json::to_string(x).map_err(|e| e.to_string())
}

pub fn prefix(length: usize) -> Result<String, String> {
    if length > MAX_PREFIX {
        return Err(format!("length must be at most {MAX_PREFIX}"));
    }
    Ok(tm_prefix(length).to_string())
}

/// Class, first occurrences, ending pattern and a witness for one factor.
pub fn explore_factor(word: &str, bound: u32) -> Result<String, String> {
    if bound > MAX_BOUND {
        return Err(format!("bound must be at most {MAX_BOUND}"));
    }
    let u: Factor = word.trim().parse().map_err(|e: tm_core::Error| e.to_string())?;
    let class = classify_factor(&u);
    let occ = occurrences(&u, bound as Nat);
    let (ending, endings) = match class {
        FactorClass::PrefixOfT | FactorClass::PrefixOfTbar => (None, Vec::new()),
        _ => match ending_pattern(&u, bound as Nat) {
            Ok(p) => {
                let e = p.endings();
                (Some(p), e)
            }
            Err(_) => (None, Vec::new()),
        },
    };
    let witness = match class {
        FactorClass::PrefixOfT => {
            ip_witness_for_prefix(&u, 6).ok().map(|w| Witness { kind: "ip", sum_terms: w.len(), terms: w.into_terms() })
        }
        FactorClass::PrefixOfTbar => fsbig_witness_for_tmbar_prefix(&u, 2, 4).ok().map(|w| Witness {
            kind: "fsbig",
            sum_terms: 3,
            terms: w.into_terms(),
        }),
        FactorClass::TwoNotThreeSummable => {
            find_k_summable_witness(|n| occurrence_parity_check(n, &u), 2, MAX_BOUND as Nat).map(|w| Witness {
                kind: "summable",
                sum_terms: 2,
                terms: w.into_terms(),
            })
        }
        FactorClass::NotTwoSummable => None,
    };
    to_json(&FactorView {
        factor: u.to_string(),
        tau_power: is_prefix_of_tau_power_aba(u.word()),
        class,
        bound,
        count: occ.len(),
        positions: occ.positions.into_iter().take(SHOWN_POSITIONS).collect(),
        ending,
        endings,
        witness,
    })
}

pub fn weak_schur(colors: u32, terms: u32, max_m: u32) -> Result<String, String> {
    let r = weak_schur_search(colors, terms, max_m).map_err(|e| e.to_string())?;
    to_json(&json!({
        "threshold": r.threshold,
        "certificate": r.certificate,
        "nodes": r.nodes,
    }))
}

#[wasm_bindgen(js_name = prefix)]
pub fn prefix_js(length: usize) -> Result<String, JsError> {
    prefix(length).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = exploreFactor)]
pub fn explore_factor_js(word: &str, bound: u32) -> Result<String, JsError> {
    explore_factor(word, bound).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = weakSchur)]
pub fn weak_schur_js(colors: u32, terms: u32, max_m: u32) -> Result<String, JsError> {
    weak_schur(colors, terms, max_m).map_err(|e| JsError::new(&e))
}
