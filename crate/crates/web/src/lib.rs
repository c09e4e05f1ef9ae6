//! Browser bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string (or throws a string error) so the page
//! needs no generated TypeScript types.

use costas_core::arrays::{enumerate_family, FamilyId, MemberLabel, Permutation};
use costas_core::numthy::PrimeContext;
use costas_core::report::{costas_check, render_costas_check, render_grid, OutputFormat};
use costas_core::xcorr::{correlation_grid, ScanEngine, ShiftFilter};
use costas_core::Error;
use wasm_bindgen::prelude::*;

/// Largest prime the page will scan a whole family for; beyond this a scan
/// blocks the tab for too long.
pub const MAX_SCAN_PRIME: u64 = 131;

fn js_err(e: Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn member(spec: &str, prime: Option<u32>) -> Result<Permutation, Error> {
    if spec.contains(':') {
        let label: MemberLabel = spec.parse()?;
        let p = prime.ok_or_else(|| Error::Parse(format!("member {spec:?} needs a prime")))?;
        label.build(&PrimeContext::new(p as u64)?)
    } else {
        spec.parse()
    }
}

pub fn grid_json(a: &str, b: &str, prime: Option<u32>) -> Result<String, Error> {
    let fa = member(a, prime)?;
    let fb = member(b, prime)?;
    let grid = correlation_grid(&fa, &fb)?;
    Ok(render_grid(&grid, a, b, OutputFormat::Json))
}

pub fn costas_check_json(permutation: &str) -> Result<String, Error> {
    let f: Permutation = permutation.parse()?;
    Ok(render_costas_check(&costas_check(&f), OutputFormat::Json))
}

pub fn family_json(prime: u32, family: &str, filter: &str) -> Result<String, Error> {
    let p = prime as u64;
    if p > MAX_SCAN_PRIME {
        return Err(Error::Parse(format!(
            "family scans in the browser are limited to p <= {MAX_SCAN_PRIME}"
        )));
    }
    let ctx = PrimeContext::new(p)?;
    let id: FamilyId = family.parse()?;
    let filter: ShiftFilter = filter.parse()?;
    let members: Vec<String> = enumerate_family(&ctx, id)?
        .iter()
        .map(|m| m.label.to_string())
        .collect();
    let report = ScanEngine::default().family_max(&ctx, id, filter, id.default_include_auto())?;
    let value = serde_json::json!({
        "p": p,
        "safe_prime": ctx.is_safe_prime,
        "t": ctx.t,
        "members": members,
        "report": report,
    });
    Ok(value.to_string())
}

/// Full correlation grid of two members (`welch-exp:3`, `power:5`, or a
/// literal `3,2,6,4,5,1`), as JSON with `rows[v][u]`.
#[wasm_bindgen]
pub fn grid(a: &str, b: &str, prime: Option<u32>) -> Result<String, JsValue> {
    grid_json(a, b, prime).map_err(js_err)
}

/// Both Costas checks, fixed points and the Golomb test for a literal permutation.
#[wasm_bindgen(js_name = costasCheck)]
pub fn costas_check_js(permutation: &str) -> Result<String, JsValue> {
    costas_check_json(permutation).map_err(js_err)
}

/// Family members and exhaustive maximum with witnesses.
#[wasm_bindgen(js_name = familyMax)]
pub fn family_max_js(prime: u32, family: &str, filter: &str) -> Result<String, JsValue> {
    family_json(prime, family, filter).map_err(js_err)
}
