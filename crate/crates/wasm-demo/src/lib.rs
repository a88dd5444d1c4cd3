//! Browser bindings. Each exported function returns a JSON string; the
//! `*_json` functions underneath are plain Rust and tested natively.

use butterfly_bst::butterfly::{ButterflyShape, ShapeKind};
use butterfly_bst::exact::simple_height_pmf;
use butterfly_bst::experiments::nonsimple_height_sample;
use butterfly_bst::samplers::{sample_nonsimple_shape, sample_simple_shape, RngState};
use butterfly_bst::Bst;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest depth drawn as a tree (4096 nodes).
pub const MAX_TREE_DEPTH: u32 = 12;
pub const MAX_SAMPLE_DEPTH: u32 = 12;
pub const MAX_TRIALS: u64 = 200_000;

fn kind(name: &str) -> Result<ShapeKind, String> {
    name.parse().map_err(|e| format!("{e}"))
}

/// Nodes of the tree of a butterfly, with `x` the in-order rank and `y` the
/// depth.
pub fn butterfly_tree_json(kind_name: &str, shape: &str) -> Result<Value, String> {
    let shape = ButterflyShape::parse(kind(kind_name)?, shape.trim()).map_err(|e| e.to_string())?;
    if shape.depth() > MAX_TREE_DEPTH {
        return Err(format!("depth {} exceeds {MAX_TREE_DEPTH}", shape.depth()));
    }
    let p = shape.build();
    let t = Bst::build(&p);
    let nodes: Vec<Value> = (1..=p.len())
        .map(|k| {
            json!({
                "key": k,
                "depth": t.depth(k).expect("key in range"),
                "parent": t.parent(k).expect("key in range"),
            })
        })
        .collect();
    let s = t.summary();
    Ok(json!({
        "kind": shape.kind().to_string(),
        "shape": shape.to_string(),
        "word": p.word(),
        "height": s.height,
        "left_edge": s.left_edge,
        "right_edge": s.right_edge,
        "nodes": nodes,
    }))
}

pub fn random_shape_json(kind_name: &str, n: u32, seed: u64) -> Result<Value, String> {
    if n == 0 || n > MAX_TREE_DEPTH {
        return Err(format!("depth must be in 1..={MAX_TREE_DEPTH}"));
    }
    let mut rng = RngState::new(seed).rng();
    let shape = match kind(kind_name)? {
        ShapeKind::Simple => sample_simple_shape(n, &mut rng),
        ShapeKind::Nonsimple => sample_nonsimple_shape(n, &mut rng),
    };
    Ok(json!(shape.to_string()))
}

/// Exact height law of a uniform simple butterfly tree.
pub fn simple_height_law_json(n: u32) -> Result<Value, String> {
    let pmf = simple_height_pmf(n).map_err(|e| e.to_string())?;
    let (values, probs): (Vec<u64>, Vec<f64>) = pmf
        .iter()
        .map(|(h, p)| (*h, p.to_f64().unwrap_or(f64::NAN)))
        .unzip();
    Ok(json!({ "n": n, "height": values, "probability": probs }))
}

/// Sampled heights of uniform nonsimple butterfly trees.
pub fn nonsimple_height_histogram_json(n: u32, trials: u64, seed: u64) -> Result<Value, String> {
    if n == 0 || n > MAX_SAMPLE_DEPTH {
        return Err(format!("depth must be in 1..={MAX_SAMPLE_DEPTH}"));
    }
    if trials == 0 || trials > MAX_TRIALS {
        return Err(format!("trials must be in 1..={MAX_TRIALS}"));
    }
    let r = nonsimple_height_sample(n, trials, RngState::new(seed));
    let (height, count): (Vec<usize>, Vec<u64>) = r.histogram.into_iter().unzip();
    Ok(json!({
        "n": n,
        "trials": trials,
        "height": height,
        "count": count,
        "mean": r.summary.mean,
        "std_dev": r.summary.std_dev,
        "lower_bound": r.lower,
        "upper_bound": r.upper,
    }))
}

fn to_js(v: Result<Value, String>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn butterfly_tree(kind: &str, shape: &str) -> Result<String, JsError> {
    to_js(butterfly_tree_json(kind, shape))
}

#[wasm_bindgen]
pub fn random_shape(kind: &str, n: u32, seed: u64) -> Result<String, JsError> {
    to_js(random_shape_json(kind, n, seed))
}

#[wasm_bindgen]
pub fn simple_height_law(n: u32) -> Result<String, JsError> {
    to_js(simple_height_law_json(n))
}

#[wasm_bindgen]
pub fn nonsimple_height_histogram(n: u32, trials: u64, seed: u64) -> Result<String, JsError> {
    to_js(nonsimple_height_histogram_json(n, trials, seed))
}
