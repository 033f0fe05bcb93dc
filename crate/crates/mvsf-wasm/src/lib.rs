//! Thin wasm-bindgen wrappers over the mvsf library for the browser demo.
//! Every function returns a JSON string so the page needs no custom glue
//! types; errors come back as `{"error": "..."}`.

use wasm_bindgen::prelude::*;

use mvsf::conjectures::{check_hook, sign_grid};
use mvsf::expand::{linearize, recurrence};
use mvsf::spherical::{build_family, SphericalType};

fn err(msg: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": msg.to_string() }).to_string()
}

/// Build Phi(w,t), normalized, and return its entries as coefficient strings
/// (ascending powers of t).
#[wasm_bindgen]
pub fn phi_matrix(n: u32, l: u32, w: u32) -> String {
    let fam = match build_family(SphericalType { n, l }, w) {
        Ok(f) => f,
        Err(e) => return err(e),
    };
    let m = match fam.member(w) {
        Ok(m) => m,
        Err(e) => return err(e),
    };
    let display: Vec<Vec<String>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.at(r, c).to_string()).collect())
        .collect();
    serde_json::json!({
        "n": n, "l": l, "w": w,
        "coeffs": m.to_strings(),
        "display": display,
    })
    .to_string()
}

/// Expand Phi(i,t) Phi(j,t) in the family and return the coefficient
/// matrices together with a rendered sign grid per index k.
#[wasm_bindgen]
pub fn linearize_json(n: u32, l: u32, i: u32, j: u32) -> String {
    let (i, j) = (i.min(j), i.max(j));
    let fam = match build_family(SphericalType { n, l }, i + j + l) {
        Ok(f) => f,
        Err(e) => return err(e),
    };
    let exp = match linearize(&fam, i, j) {
        Ok(e) => e,
        Err(e) => return err(e),
    };
    let signs: Vec<(u32, String)> = exp
        .coeffs
        .iter()
        .map(|(k, a)| (*k, sign_grid(a).render()))
        .collect();
    serde_json::json!({
        "expansion": serde_json::from_str::<serde_json::Value>(&exp.to_json()).unwrap(),
        "signs": signs,
    })
    .to_string()
}

/// Compute the three-term recurrence triple at index w.
#[wasm_bindgen]
pub fn recurrence_json(n: u32, l: u32, w: u32) -> String {
    let fam = match build_family(SphericalType { n, l }, w + 1) {
        Ok(f) => f,
        Err(e) => return err(e),
    };
    match recurrence(&fam, w) {
        Ok(t) => serde_json::json!({
            "w": w,
            "A": t.a.to_strings(),
            "B": t.b.to_strings(),
            "C": t.c.to_strings(),
        })
        .to_string(),
        Err(e) => err(e),
    }
}

/// Run the hook-pattern check for one (n, i, j) cell at l=1.
#[wasm_bindgen]
pub fn hook_json(n: u32, i: u32, j: u32) -> String {
    if i >= j {
        return err("hook check needs i < j");
    }
    let fam = match build_family(SphericalType { n, l: 1 }, i + j + 1) {
        Ok(f) => f,
        Err(e) => return err(e),
    };
    match check_hook(&fam, i, j) {
        Ok(rep) => serde_json::to_string(&rep).unwrap_or_else(err),
        Err(e) => err(e),
    }
}
