//! Browser demo over three library operations. Each takes and returns plain
//! strings (JSON on success) so the same functions run natively in tests and
//! behind `wasm-bindgen` in the page.

use std::sync::Arc;

use serde::Serialize;

use qtorus::delta::delta_principal;
use qtorus::element::{Algebra, Element};
use qtorus::format::{parse_character, parse_int_rows};
use qtorus::module::CyclicModule;
use qtorus::pairing::{alternating_block_decomposition, Presentation, ScalarGroup, ScalarValue};
use qtorus::skew::{right_divide, skew_multiply, SkewRational};
use qtorus::Rational;

#[derive(Serialize)]
struct ConeJson {
    rays: Vec<Vec<i64>>,
    lineality: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct FanJson {
    support: Vec<Vec<i64>>,
    dimension: Option<usize>,
    cones: Vec<ConeJson>,
}

#[derive(Serialize)]
struct BlockJson {
    v: Vec<i64>,
    w: Vec<i64>,
    divisor: i64,
}

#[derive(Serialize)]
struct BlocksJson {
    blocks: Vec<BlockJson>,
    /// Product of the divisors, the absolute pfaffian.
    pfaffian: String,
}

#[derive(Serialize)]
struct DivisionJson {
    quotient: String,
    remainder: String,
    /// `f == q g + r` recomputed exactly.
    verified: bool,
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

/// Rank-2 algebra with `u1 u2 = 2^q u2 u1`.
fn plane(q: i64) -> Result<Arc<Algebra<Rational>>, String> {
    let group = ScalarGroup::new(1, 0).map_err(|e| e.to_string())?;
    let p = Presentation::from_upper(2, group, &[(0, 1, ScalarValue { free: vec![q], torsion: 0 })]).map_err(|e| e.to_string())?;
    Ok(Arc::new(Algebra::with_primes(p, &[2]).map_err(|e| e.to_string())?))
}

/// Exact fan of `F*A / alpha F*A` for a relation in `u1, u2`.
pub fn tropical_fan(relation: &str, q: i64) -> Result<String, String> {
    let alg = plane(q)?;
    let alpha = Element::parse(&alg, relation).map_err(|e| e.to_string())?;
    let support = alpha.support();
    let m = CyclicModule::principal(alpha).map_err(|e| e.to_string())?;
    let d = delta_principal(&m).map_err(|e| e.to_string())?;
    let cones = d.outer.cones().iter().map(|c| ConeJson { rays: c.rays(), lineality: c.lineality() }).collect();
    Ok(json(&FanJson { support, dimension: d.outer.dimension(), cones }))
}

/// Symplectic blocks of an alternating integer matrix given as `0,1;-1,0`.
pub fn block_decomposition(matrix: &str) -> Result<String, String> {
    let rows = parse_int_rows(matrix).map_err(|e| e.to_string())?;
    let p = Presentation::integer(&rows).map_err(|e| e.to_string())?;
    let d = alternating_block_decomposition(&p).map_err(|e| e.to_string())?;
    // exact: the product can leave i64
    let pf = d.blocks.iter().fold(Rational::from_integer(1.into()), |a, b| a * Rational::from_integer(b.divisor.into()));
    let blocks = d.blocks.into_iter().map(|b| BlockJson { v: b.v, w: b.w, divisor: b.divisor }).collect();
    Ok(json(&BlocksJson { blocks, pfaffian: pf.to_string() }))
}

/// Right division `f = q g + r` in `Q(x1..xt)[u; sigma]` with
/// `sigma(x_i) = lambda_i x_i`; `lambda` is written `2,3`. Input accepts
/// `x` or `t` names, output uses `t1, t2, ...`.
pub fn skew_divide(f: &str, g: &str, lambda: &str) -> Result<String, String> {
    let lambda = parse_character(lambda).map_err(|e| e.to_string())?;
    let f = SkewRational::parse(&lambda, f).map_err(|e| format!("f: {e}"))?;
    let g = SkewRational::parse(&lambda, g).map_err(|e| format!("g: {e}"))?;
    let (q, r) = right_divide(&f, &g).map_err(|e| e.to_string())?;
    let back = skew_multiply(&q, &g).and_then(|qg| qg.try_add(&r)).map_err(|e| e.to_string())?;
    Ok(json(&DivisionJson { quotient: q.to_string(), remainder: r.to_string(), verified: back == f }))
}

#[cfg(target_arch = "wasm32")]
mod bindings {
    use wasm_bindgen::prelude::*;

    #[wasm_bindgen(js_name = tropicalFan)]
    pub fn tropical_fan(relation: &str, q: i32) -> Result<String, JsValue> {
        super::tropical_fan(relation, i64::from(q)).map_err(|e| JsValue::from_str(&e))
    }

    #[wasm_bindgen(js_name = blockDecomposition)]
    pub fn block_decomposition(matrix: &str) -> Result<String, JsValue> {
        super::block_decomposition(matrix).map_err(|e| JsValue::from_str(&e))
    }

    #[wasm_bindgen(js_name = skewDivide)]
    pub fn skew_divide(f: &str, g: &str, lambda: &str) -> Result<String, JsValue> {
        super::skew_divide(f, g, lambda).map_err(|e| JsValue::from_str(&e))
    }
}
