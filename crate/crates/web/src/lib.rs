//! Browser bindings: each export takes plain numbers and strings and returns
//! a JSON string, so the page needs no glue beyond `JSON.parse`.

use std::sync::Arc;

use semifield::aut::{matrices, structured_automorphisms};
use semifield::iso::{classify_cyclic, cyclic_aut_profile};
use semifield::knuth::family_fingerprints;
use semifield::text::{format_poly_symbolic, parse_elem, parse_poly};
use semifield::{Error, FieldTower, Group, PetitAlgebra};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `|K|` the page will work with.
const MAX_FIELD: u64 = 729;

fn tower(p: u32, r: u32, n: u32) -> Result<Arc<FieldTower>, String> {
    let t = FieldTower::new(p, r, n).map_err(|e| e.to_string())?;
    if t.size() as u64 > MAX_FIELD {
        return Err(format!("K has {} elements; the demo stops at {MAX_FIELD}", t.size()));
    }
    Ok(Arc::new(t))
}

/// Classes of `(K/F, σ, a)` with `m = n`, with their automorphism groups.
pub fn classify_json(p: u32, r: u32, m: u32) -> Result<Value, String> {
    let t = tower(p, r, m)?;
    let rep = classify_cyclic(&t);
    let mut classes = Vec::new();
    for c in &rep.classes {
        let group = match cyclic_aut_profile(t.clone(), c.representative) {
            Ok(profile) => json!({ "order": profile.group.order, "tag": profile.group.tag.to_string() }),
            Err(Error::Hypothesis(msg)) => json!({ "error": msg }),
            Err(e) => return Err(e.to_string()),
        };
        classes.push(json!({
            "representative": t.format_symbolic(c.representative),
            "encoding": c.representative,
            "size": c.size,
            "group": group,
        }));
    }
    Ok(json!({
        "q": rep.q,
        "m": rep.m,
        "count": rep.count,
        "formula": rep.formula,
        "classes": classes,
    }))
}

/// `Aut_F(S_f)` from the structured maps, with its composition table.
pub fn automorphisms_json(p: u32, r: u32, n: u32, f: &str) -> Result<Value, String> {
    let t = tower(p, r, n)?;
    let f = parse_poly(&t, f).map_err(|e| e.to_string())?;
    let alg = PetitAlgebra::from_tower(t.clone(), f).map_err(|e| e.to_string())?;
    let sol = structured_automorphisms(&alg).map_err(|e| e.to_string())?;
    let g = Group::from_maps(matrices(&sol.maps), t.p()).map_err(|e| e.to_string())?;
    let id = semifield::group::identify(&g);
    let labels: Vec<Value> = sol
        .maps
        .iter()
        .map(|m| match &m.kind {
            semifield::AutKind::Structured { j, k } => json!(format!("H(σ^{j}, {})", t.format_symbolic(*k))),
            _ => json!("?"),
        })
        .collect();
    let table: Vec<Vec<usize>> = (0..g.order()).map(|a| (0..g.order()).map(|b| g.mul(a, b)).collect()).collect();
    Ok(json!({
        "f": format_poly_symbolic(&t, alg.f()),
        "order": id.order,
        "tag": id.tag.to_string(),
        "relations": id.relations,
        "complete": sol.complete,
        "elements": labels,
        "element_orders": (0..g.order()).map(|a| g.element_order(a)).collect::<Vec<_>>(),
        "table": table,
    }))
}

/// Nucleus fingerprints of HK, Kn_1, Kn_2, Kn_3 for one `(η, μ)`.
pub fn fingerprints_json(p: u32, r: u32, n: u32, eta: &str, mu: &str) -> Result<Value, String> {
    let t = tower(p, r, n)?;
    let eta = parse_elem(&t, eta).map_err(|e| e.to_string())?;
    let mu = if mu.trim().is_empty() { semifield::Elem::ZERO } else { parse_elem(&t, mu).map_err(|e| e.to_string())? };
    let rep = family_fingerprints(t, eta, mu).map_err(|e| e.to_string())?;
    serde_json::to_value(rep).map_err(|e| e.to_string())
}

fn wrap(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify(p: u32, r: u32, m: u32) -> Result<String, JsValue> {
    wrap(classify_json(p, r, m))
}

#[wasm_bindgen]
pub fn automorphisms(p: u32, r: u32, n: u32, f: &str) -> Result<String, JsValue> {
    wrap(automorphisms_json(p, r, n, f))
}

#[wasm_bindgen]
pub fn fingerprints(p: u32, r: u32, n: u32, eta: &str, mu: &str) -> Result<String, JsValue> {
    wrap(fingerprints_json(p, r, n, eta, mu))
}
