//! Three operations for the static page in `www/`: solve a PGSolver game,
//! decompose an even graph, and build a finite universal tree.
//! Every function returns JSON; errors come back as `{"error": ...}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use pix_core::decomposition::build_ad;
use pix_core::games::{find_odd_lasso, solve};
use pix_core::io::{import_pgsolver, Conversion};
use pix_core::trees::universal_tree;

fn wrap(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Winning regions of a game in PGSolver format (target-priority reading).
#[wasm_bindgen]
pub fn solve_pgsolver(text: &str) -> String {
    wrap((|| {
        let game = import_pgsolver(text, Conversion::Target).map_err(|e| e.to_string())?.game;
        let sol = solve(&game).map_err(|e| e.to_string())?;
        Ok(json!({
            "eve_region": sol.eve_region,
            "adam_region": sol.adam_region,
        }))
    })())
}

/// Canonical decomposition of the Adam-only graph in a PGSolver file: its
/// tree shape and n-Strahler numbers for n = 1..3, or an odd cycle.
#[wasm_bindgen]
pub fn decompose_pgsolver(text: &str) -> String {
    wrap((|| {
        let g = import_pgsolver(text, Conversion::Target).map_err(|e| e.to_string())?.game.graph;
        if let Some(l) = find_odd_lasso(&g).map_err(|e| e.to_string())? {
            let cycle: Vec<_> = l.cycle.iter().map(|&e| g.edge(e)).collect();
            return Ok(json!({ "even": false, "odd_cycle": cycle }));
        }
        let h = g.max_priority().unwrap_or(0).div_ceil(2) * 2;
        let t = build_ad(&g, h).map_err(|e| e.to_string())?.shape();
        let strahler: Vec<u32> = (1..=3).map(|n| t.n_strahler(n)).collect();
        Ok(json!({ "even": true, "shape": t.to_string(), "depth": t.depth(), "strahler": strahler }))
    })())
}

/// `U(n,k,d)` with ω-blocks truncated to `w`, in bracket syntax.
#[wasm_bindgen]
pub fn universal(n: u32, k: u32, d: u32, w: usize) -> String {
    wrap(
        universal_tree(n, k, d, w)
            .map(|u| json!({ "tree": u.to_string(), "nodes": u.size() }))
            .map_err(|e| e.to_string()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operations_return_json() {
        let pg = "parity 1;\n0 2 0 1;\n1 1 1 0;\n";
        let v: Value = serde_json::from_str(&solve_pgsolver(pg)).unwrap();
        assert_eq!(v["eve_region"], json!([0, 1]));
        let d: Value = serde_json::from_str(&decompose_pgsolver(pg)).unwrap();
        assert_eq!(d["even"], json!(true));
        let u: Value = serde_json::from_str(&universal(1, 2, 2, 2)).unwrap();
        assert_eq!(u["tree"], json!("(()())"));
        let e: Value = serde_json::from_str(&solve_pgsolver("nonsense")).unwrap();
        assert!(e["error"].is_string());
    }
}
