//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every entry point takes and returns JSON text. The `*_json` functions
//! are the same computations without the JavaScript boundary.

use std::sync::Arc;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use twb_core::chartab::CharacterTable;
use twb_core::corpus::check_pair;
use twb_core::descriptor::{parse, ExtensionInput, GroupDescriptor, TorusInput};
use twb_core::extension::{fiber_class_reps, reidemeister_extension, reidemeister_extension_sequence};
use twb_core::group::{enumerate_endomorphisms_with, GroupConfig};
use twb_core::mobius::{congruence_check_partial, torus_map_reidemeister};

pub const DEMO_ORDER_CAP: usize = 32;
pub const DEMO_N_MAX: usize = 40;

fn demo_config() -> GroupConfig {
    GroupConfig { order_cap: DEMO_ORDER_CAP, ..GroupConfig::default() }
}

fn string(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn torus_json(input: &str, n_max: usize) -> Result<String, String> {
    let input = parse::<TorusInput>(input).map_err(string)?;
    input.validate().map_err(string)?;
    let seq = torus_map_reidemeister(&input.matrix, n_max.clamp(1, DEMO_N_MAX));
    let report = congruence_check_partial(&seq);
    Ok(json!({"sequence": seq.values, "congruence": report}).to_string())
}

pub fn extension_json(input: &str, n_max: usize) -> Result<String, String> {
    let (g, phi) = parse::<ExtensionInput>(input).map_err(string)?.build().map_err(string)?;
    let reps = fiber_class_reps(&g, &phi).ok().map(|reps| {
        reps.iter()
            .map(|(v, n)| json!({"v": v.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "n": n}))
            .collect::<Vec<_>>()
    });
    let seq = reidemeister_extension_sequence(&g, &phi, n_max.clamp(1, DEMO_N_MAX) as u32);
    Ok(json!({"R": reidemeister_extension(&g, &phi), "representatives": reps, "sequence": seq}).to_string())
}

pub fn explore_json(input: &str, n_max: usize) -> Result<String, String> {
    let config = demo_config();
    let descriptor = parse::<GroupDescriptor>(input).map_err(string)?;
    let group = Arc::new(descriptor.build(&config).map_err(string)?);
    let table = CharacterTable::with_order_cap(&group, config.order_cap).map_err(string)?;
    let maps = enumerate_endomorphisms_with(&group, false, &config).map_err(string)?;
    let pairs: Vec<Value> = maps
        .iter()
        .map(|m| serde_json::to_value(check_pair("input", &table, m, n_max.min(DEMO_N_MAX), false)).map_err(string))
        .collect::<Result<_, _>>()?;
    let labels: Vec<String> = group.elements().map(|x| group.label(x)).collect();
    Ok(json!({
        "order": group.order(),
        "labels": labels,
        "degrees": table.degrees(),
        "pairs": pairs,
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

/// `{"matrix": [[..]]}` to the sequence R(fⁿ) and its congruence report.
#[wasm_bindgen]
pub fn torus_sequence(input: &str, n_max: usize) -> Result<String, JsValue> {
    js(torus_json(input, n_max))
}

/// `{"theta", "B", "eps"}` to R, class representatives and R(φⁿ).
#[wasm_bindgen]
pub fn extension_reidemeister(input: &str, n_max: usize) -> Result<String, JsValue> {
    js(extension_json(input, n_max))
}

/// A group descriptor to R, S and checks for each of its endomorphisms.
#[wasm_bindgen]
pub fn explore_group(input: &str, n_max: usize) -> Result<String, JsValue> {
    js(explore_json(input, n_max))
}
