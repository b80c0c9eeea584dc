//! Three operations for the static demo page. Each takes a JSON request and
//! returns a JSON response; failures come back as `{"error": "..."}` rather
//! than exceptions so the page needs no error plumbing.

use serde::{Deserialize, Serialize};
use serde_json::json;
use wasm_bindgen::prelude::*;

use zigzag_hh::ainfty::{check_stasheff, class_of, rotation_m4};
use zigzag_hh::exactla::FieldSpec;
use zigzag_hh::ginzburg::{hh2_dim, hh2_dim_by_trace};
use zigzag_hh::preproj::{lambda_piece, trace_piece};
use zigzag_hh::quiver::{parse_label, Graph, Quiver};
use zigzag_hh::zigzag::{build_zigzag, hochschild_dim, is_coboundary, is_cocycle};

/// Keeps a browser tab responsive.
const MAX_DEGREE: usize = 12;

#[derive(Deserialize)]
struct GraphRequest {
    graph: String,
    #[serde(default)]
    characteristic: u64,
    max: usize,
}

#[derive(Deserialize)]
struct M4Request {
    #[serde(default)]
    characteristic: u64,
    coefficients: [i64; 4],
}

#[derive(Serialize)]
struct PreprojRow {
    n: usize,
    lambda: usize,
    trace: usize,
}

#[derive(Serialize)]
struct HHRow {
    q: i64,
    ginzburg: usize,
    trace: usize,
    /// absent when the graph is not a tree
    zigzag: Option<usize>,
}

fn respond(result: Result<serde_json::Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn setup(request: &str) -> Result<(GraphRequest, Graph, Quiver, FieldSpec), String> {
    let req: GraphRequest = serde_json::from_str(request).map_err(|e| e.to_string())?;
    if req.max == 0 || req.max > MAX_DEGREE {
        return Err(format!("max must be in 1..={MAX_DEGREE}"));
    }
    let field = FieldSpec::new(req.characteristic).map_err(|e| e.to_string())?;
    let g = parse_label(&req.graph).map_err(|e| e.to_string())?;
    let q = g
        .orient_bipartite()
        .unwrap_or_else(|_| g.orient_increasing());
    Ok((req, g, q, field))
}

/// `{"graph": "D~4", "characteristic": 0, "max": 6}` → rows of `dim Λ^n`
/// and the trace dimension for `n ≤ max`.
#[wasm_bindgen]
pub fn preproj_table(request: &str) -> String {
    respond(setup(request).map(|(req, _, q, f)| {
        let rows: Vec<PreprojRow> = (0..=req.max)
            .map(|n| PreprojRow {
                n,
                lambda: lambda_piece(&q, n, f).dimension,
                trace: trace_piece(&q, n, f).dimension,
            })
            .collect();
        json!({ "graph": req.graph, "rows": rows })
    }))
}

/// Same request shape; `dim HH^{2,q}` for `1 ≤ q ≤ max` by every applicable method.
#[wasm_bindgen]
pub fn hh2_table(request: &str) -> String {
    respond(setup(request).and_then(|(req, g, q, f)| {
        let z = if g.is_tree() {
            Some(build_zigzag(&g, f).map_err(|e| e.to_string())?)
        } else {
            None
        };
        let rows: Vec<HHRow> = (1..=req.max as i64)
            .map(|a| HHRow {
                q: a,
                ginzburg: hh2_dim(&q, a, f).dimension,
                trace: hh2_dim_by_trace(&q, a, f).dimension,
                zigzag: z.as_ref().map(|z| hochschild_dim(z, 2, a).dimension),
            })
            .collect();
        let agree = rows
            .iter()
            .all(|r| r.ginzburg == r.trace && r.zigzag.is_none_or(|z| z == r.ginzburg));
        Ok(json!({ "graph": req.graph, "rows": rows, "agreement": agree }))
    }))
}

/// `{"characteristic": 0, "coefficients": [1, -1, 1, -1]}` → cocycle and
/// coboundary verdicts for `m4` on `Z(D~4)` plus the Stasheff check to arity 5.
#[wasm_bindgen]
pub fn m4_check(request: &str) -> String {
    let run = || -> Result<serde_json::Value, String> {
        let req: M4Request = serde_json::from_str(request).map_err(|e| e.to_string())?;
        let field = FieldSpec::new(req.characteristic).map_err(|e| e.to_string())?;
        let c = rotation_m4(field, req.coefficients).map_err(|e| e.to_string())?;
        let class = class_of(&c, 4).map_err(|e| e.to_string())?;
        let alg = c.algebra();
        let cocycle = is_cocycle(alg, &class);
        let coboundary = is_coboundary(alg, &class).map_err(|e| e.to_string())?;
        let stasheff = check_stasheff(&c, 5).map_err(|e| e.to_string())?;
        Ok(json!({
            "m4": class.display(alg),
            "cocycle": cocycle,
            "coboundary": coboundary,
            "stasheff": stasheff.verdict,
            "nontrivial": cocycle && !coboundary,
        }))
    };
    respond(run())
}
