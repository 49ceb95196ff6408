//! Browser demo bindings: parse a graph, analyze it (count, recognize,
//! factor), generate family graphs, and run the conjecture search, all
//! returning JSON strings a static page renders.
//!
//! Build with `wasm-pack build --target web crates/spantree-wasm` and open
//! `crates/spantree-wasm/static/index.html` from a local server.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use spantree::ehrenborg::{self, SearchParams};
use spantree::enumerator::{self, Enumerator};
use spantree::families;
use spantree::graph::Graph;
use spantree::linalg;
use spantree::recognition::{self, CographOutcome, DhOutcome};
use spantree::Error;

#[derive(Serialize)]
struct AnalyzeReport {
    n: usize,
    m: usize,
    edges: Vec<(u32, u32)>,
    connected: bool,
    tau: String,
    distance_hereditary: bool,
    /// Construction certificate lines when distance-hereditary.
    certificate: Option<String>,
    /// Forbidden-subgraph witness when not (and small enough to search).
    witness: Option<String>,
    cograph: bool,
    p4: Option<[u32; 4]>,
    threshold: bool,
    enumerator_form: String,
    enumerator: String,
    enumerator_pretty: String,
    bipartite: bool,
    ehrenborg: Option<EhrenborgJson>,
}

#[derive(Serialize)]
struct EhrenborgJson {
    lhs: String,
    rhs: String,
    ratio: Option<String>,
    holds: bool,
}

#[derive(Serialize)]
struct SearchJson {
    seed: u64,
    records: Vec<SearchRecordJson>,
}

#[derive(Serialize)]
struct SearchRecordJson {
    hash: String,
    n: usize,
    m: usize,
    lhs: String,
    rhs: String,
    ratio: Option<String>,
    holds: bool,
}

fn err_js(e: Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Factored enumerators read better with the factors grouped.
fn pretty_enumerator(e: &Enumerator) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    if *e.constant() != 1.into() {
        parts.push(e.constant().to_string());
    }
    for (f, m) in e.factors() {
        let form = f
            .terms()
            .map(|(v, c)| {
                if *c == 1.into() {
                    format!("x{v}")
                } else {
                    format!("{c}*x{v}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ");
        if *m == 1 {
            parts.push(format!("({form})"));
        } else {
            parts.push(format!("({form})^{m}"));
        }
    }
    if !e.remainder().is_one() {
        parts.push(format!("[ {} ]", e.remainder()));
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

fn analyze_impl(graph_text: &str) -> Result<String, Error> {
    let g = Graph::parse_text(graph_text)?;
    if g.vertex_count() == 0 {
        return Err(Error::invalid("graph has no vertices"));
    }
    let connected = g.is_connected();
    let tau = linalg::tree_count(&g);

    let (dh, certificate, witness) = if connected {
        match recognition::recognize_dh(&g)? {
            DhOutcome::DistanceHereditary(cert) => (true, Some(cert.to_text()), None),
            DhOutcome::NotDistanceHereditary { .. } => {
                let w = if g.vertex_count() <= 12 {
                    recognition::find_forbidden(&g)?.map(|w| w.to_string())
                } else {
                    None
                };
                (false, None, w)
            }
        }
    } else {
        (false, None, None)
    };

    let (cograph, p4) = match recognition::is_cograph(&g) {
        CographOutcome::Cograph(_) => (true, None),
        CographOutcome::NotCograph { p4 } => {
            (false, Some([p4[0].index(), p4[1].index(), p4[2].index(), p4[3].index()]))
        }
    };

    let (e, factored) = enumerator::graph_enumerator(&g)?;
    let bipartition = g.bipartition();
    let ehrenborg = match &bipartition {
        Some(cert) if connected => {
            let r = ehrenborg::check_numeric(&g, cert)?;
            Some(EhrenborgJson {
                lhs: r.lhs.to_string(),
                rhs: r.rhs.to_string(),
                ratio: r.ratio.map(|x| x.to_string()),
                holds: r.holds,
            })
        }
        _ => None,
    };

    let report = AnalyzeReport {
        n: g.vertex_count(),
        m: g.edge_count(),
        edges: g.edges().iter().map(|&(u, v)| (u.index(), v.index())).collect(),
        connected,
        tau: tau.to_string(),
        distance_hereditary: dh,
        certificate,
        witness,
        cograph,
        p4,
        threshold: recognition::is_threshold(&g),
        enumerator_form: if factored { "factored" } else { "expanded" }.to_string(),
        enumerator: e.to_text(),
        enumerator_pretty: pretty_enumerator(&e),
        bipartite: bipartition.is_some(),
        ehrenborg,
    };
    serde_json::to_string(&report).map_err(|e| Error::Unsupported(e.to_string()))
}

fn family_impl(name: &str, a: u32, b: u32) -> Result<String, Error> {
    let g = match name {
        "cycle" => families::cycle(a)?,
        "path" => families::path(a)?,
        "complete" => families::complete(a)?,
        "complete_bipartite" => families::complete_bipartite(a, b)?,
        "superprism" => families::superprism(a)?,
        "ferrers_staircase" => {
            // staircase partition (a, a-1, ..., 1), a classic equality case
            if a == 0 {
                return Err(Error::invalid("staircase needs a positive first part"));
            }
            let parts: Vec<u32> = (1..=a).rev().collect();
            families::ferrers_young(&families::FerrersDiagram::new(parts)?).0
        }
        "wheel" => families::cycle(a)?.cone().0,
        other => {
            return Err(Error::invalid(format!(
                "unknown family `{other}`; known: cycle, path, complete, \
                 complete_bipartite, superprism, ferrers_staircase, wheel"
            )))
        }
    };
    Ok(g.to_text())
}

fn search_impl(
    n_min: u32,
    n_max: u32,
    trials: u32,
    seed: u64,
    top: usize,
) -> Result<String, Error> {
    let params = SearchParams {
        n_min,
        n_max,
        density_num: 1,
        density_den: 2,
        trials,
        seed,
    };
    let records = ehrenborg::search_counterexample(&params)?;
    let out = SearchJson {
        seed,
        records: records
            .into_iter()
            .take(top)
            .map(|r| SearchRecordJson {
                hash: format!("{:016x}", r.graph_hash),
                n: r.n,
                m: r.m,
                lhs: r.report.lhs.to_string(),
                rhs: r.report.rhs.to_string(),
                ratio: r.report.ratio.map(|x| x.to_string()),
                holds: r.report.holds,
            })
            .collect(),
    };
    serde_json::to_string(&out).map_err(|e| Error::Unsupported(e.to_string()))
}

/// Analyze a graph in the canonical text format; returns a JSON report.
#[wasm_bindgen]
pub fn analyze(graph_text: &str) -> Result<String, JsValue> {
    analyze_impl(graph_text).map_err(err_js)
}

/// Generate a named family graph; returns the canonical text format.
#[wasm_bindgen]
pub fn family(name: &str, a: u32, b: u32) -> Result<String, JsValue> {
    family_impl(name, a, b).map_err(err_js)
}

/// Seeded random sweep of the bipartite conjecture; returns JSON records
/// sorted by ratio (tightest first).
#[wasm_bindgen]
pub fn ehrenborg_search(
    n_min: u32,
    n_max: u32,
    trials: u32,
    seed: u64,
    top: usize,
) -> Result<String, JsValue> {
    search_impl(n_min, n_max, trials, seed, top).map_err(err_js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_reports_k23() {
        let text = family_impl("complete_bipartite", 2, 3).unwrap();
        let json = analyze_impl(&text).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["n"], 5);
        assert_eq!(v["tau"], "12");
        assert_eq!(v["distance_hereditary"], true);
        assert_eq!(v["enumerator_form"], "factored");
        assert_eq!(v["bipartite"], true);
        assert_eq!(v["ehrenborg"]["holds"], true);
        assert!(v["enumerator_pretty"].as_str().unwrap().contains("(x0 + x1)^2"));
    }

    #[test]
    fn analyze_flags_non_dh() {
        let text = family_impl("cycle", 5, 0).unwrap();
        let json = analyze_impl(&text).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["distance_hereditary"], false);
        assert!(v["witness"].as_str().unwrap().starts_with("cycle("));
        assert_eq!(v["enumerator_form"], "expanded");
    }

    #[test]
    fn family_errors_are_clean() {
        assert!(family_impl("nope", 3, 0).is_err());
        assert!(family_impl("cycle", 2, 0).is_err());
    }

    #[test]
    fn search_json_shape() {
        let json = search_impl(4, 6, 10, 0, 5).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["seed"], 0);
        let records = v["records"].as_array().unwrap();
        assert!(records.len() <= 5);
        for r in records {
            assert_eq!(r["holds"], true);
        }
    }
}
