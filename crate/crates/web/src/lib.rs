//! Browser bindings for the demo page in `www/`.
//!
//! Each operation takes a system document (the same JSON the CLI reads) and
//! returns a JSON string. The plain functions are what the tests exercise;
//! the `wasm_bindgen` wrappers only turn errors into JS exceptions.

use serde::Serialize;
use tristate_kofn::document::load_system;
use tristate_kofn::pgf::{pgf_bivariate, pgf_univariate};
use tristate_kofn::{compute, Level, Method, Outcome};
use wasm_bindgen::prelude::*;

/// Largest chain the heatmap will draw; the table has `(n + 1)^2` cells.
pub const MAX_HEATMAP_N: usize = 200;

/// Sample count for `mc` in the browser, smaller than the CLI default.
pub const WEB_SAMPLES: u64 = 200_000;

#[derive(Serialize)]
struct DistributionOut {
    method: &'static str,
    kind: String,
    r0: f64,
    r1: f64,
    r2: f64,
    #[serde(rename = "R1")]
    cum1: f64,
    #[serde(rename = "R2")]
    cum2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    std_err: Option<[f64; 5]>,
}

#[derive(Serialize)]
struct JointOut {
    n: usize,
    /// `table[x][y]` = P(N1 = x, N2 = y).
    table: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct TailsOut {
    k: Vec<usize>,
    #[serde(rename = "R1")]
    cum1: Vec<f64>,
    #[serde(rename = "R2")]
    cum2: Vec<f64>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

pub fn distribution_json(doc: &str, method: &str) -> Result<String, String> {
    let system = load_system(doc).map_err(|e| e.to_string())?;
    let method = match method.parse::<Method>().map_err(|e| e.to_string())? {
        Method::MonteCarlo { seed, .. } => Method::MonteCarlo {
            samples: WEB_SAMPLES,
            seed,
        },
        m => m,
    };
    let outcome = compute(&system.chain, &system.spec, method).map_err(|e| e.to_string())?;
    let d = outcome.distribution();
    Ok(to_json(&DistributionOut {
        method: method.name(),
        kind: system.spec.kind().to_string(),
        r0: d.r0,
        r1: d.r1,
        r2: d.r2,
        cum1: d.cum1,
        cum2: d.cum2,
        std_err: match outcome {
            Outcome::Estimate(e) => Some(e.std_err_array()),
            Outcome::Exact(_) => None,
        },
    }))
}

pub fn joint_pmf_json(doc: &str) -> Result<String, String> {
    let system = load_system(doc).map_err(|e| e.to_string())?;
    let n = system.chain.len();
    if n > MAX_HEATMAP_N {
        return Err(format!("heatmap limited to n <= {MAX_HEATMAP_N}, got n = {n}"));
    }
    Ok(to_json(&JointOut {
        n,
        table: pgf_bivariate(&system.chain).to_table(),
    }))
}

/// `R1(k) = P(N1 >= k)` and `R2(k) = P(N2 >= k)` for `k = 0..=n`.
pub fn tail_curves_json(doc: &str) -> Result<String, String> {
    let system = load_system(doc).map_err(|e| e.to_string())?;
    let n = system.chain.len();
    let tails = |level| {
        let psi = pgf_univariate(&system.chain, level);
        (0..=n).map(|k| psi.tail(k).expect("k <= n")).collect()
    };
    Ok(to_json(&TailsOut {
        k: (0..=n).collect(),
        cum1: tails(Level::AtLeastPartial),
        cum2: tails(Level::Perfect),
    }))
}

#[wasm_bindgen]
pub fn distribution(doc: &str, method: &str) -> Result<String, JsError> {
    distribution_json(doc, method).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn joint_pmf(doc: &str) -> Result<String, JsError> {
    joint_pmf_json(doc).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn tail_curves(doc: &str) -> Result<String, JsError> {
    tail_curves_json(doc).map_err(|e| JsError::new(&e))
}
