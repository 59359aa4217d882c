//! Browser bindings. Each export returns a JSON string; errors come back as
//! a thrown string. The `*_json` functions hold the logic so they can be
//! tested natively.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use pillai_core::arith::cf::{cf_expand_log_ratio, small};
use pillai_core::arith::PrecisionPolicy;
use pillai_core::bounds::y_bounds;
use pillai_core::campaign::corollary_case;
use pillai_core::equation::{classify, make_instance, CaseTag};
use pillai_core::reduction::{check_case_with, CaseCeilings};

/// Largest `q_max` accepted from the page.
pub const MAX_Q: u64 = 1_000_000_000;
/// Largest `n` for the companion search; larger ones take too long in a tab.
pub const MAX_COROLLARY_N: u64 = 500;

fn to_json(v: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Classification, bounds and the full elimination record for one case.
pub fn explore_case_json(p: u64, n: u64) -> Result<String, String> {
    let policy = PrecisionPolicy::default();
    let inst = make_instance(p, n).map_err(|e| e.to_string())?;
    let tag = classify(&inst).tag;
    if tag == CaseTag::OutOfScope {
        return Err(format!("pn = {} is not ±1 mod 5", p * n));
    }
    let bounds = match tag {
        CaseTag::EvenN => None,
        _ => Some(y_bounds(&inst, &policy).map_err(|e| e.to_string())?),
    };
    let ceilings = CaseCeilings::derive(&policy).map_err(|e| e.to_string())?;
    let verdict = check_case_with(&inst, &policy, &ceilings).map_err(|e| e.to_string())?;
    to_json(&json!({
        "p": p,
        "n": n,
        "u": inst.u().to_string(),
        "v": inst.v().to_string(),
        "w": inst.w().to_string(),
        "case_tag": tag,
        "bounds": bounds,
        "ceiling": ceilings.for_tag(tag).map(|(pb, nb)| json!({ "p_below": pb, "n_at_most": nb })),
        "verdict": verdict,
    }))
}

/// Partial quotients and convergents of `log a / log b` up to `q_max`,
/// with `q²·|log a/log b − p/q|` for each convergent.
pub fn log_ratio_cf_json(a: u64, b: u64, q_max: u64) -> Result<String, String> {
    if q_max == 0 || q_max > MAX_Q {
        return Err(format!("q_max must be in 1..={MAX_Q}"));
    }
    if a <= b {
        return Err("a must exceed b".into());
    }
    let cf = cf_expand_log_ratio(a as u128, b as u128, q_max, &PrecisionPolicy::default())
        .map_err(|e| e.to_string())?;
    let ratio = (a as f64).ln() / (b as f64).ln();
    let convergents: Vec<_> = cf
        .indices_up_to(q_max)
        .map(|r| {
            let c = &cf.convergents()[r];
            let as_f64 = |m| small(m).map_or(f64::INFINITY, |v| v as f64);
            let (pf, qf) = (as_f64(&c.p), as_f64(&c.q));
            json!({
                "r": r,
                "p": c.p.to_string(),
                "q": c.q.to_string(),
                "scaled_error": qf * qf * (ratio - pf / qf).abs(),
            })
        })
        .collect();
    to_json(&json!({
        "a": a,
        "b": b,
        "quotients": cf.quotients().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "convergents": convergents,
        "precision_bits": cf.precision(),
        "terminated": cf.is_terminated(),
    }))
}

/// Exponent bounds and the congruence-pair search for the companion
/// equation at one `n` with `5 | n`.
pub fn corollary_search_json(n: u64) -> Result<String, String> {
    if n > MAX_COROLLARY_N {
        return Err(format!("n is capped at {MAX_COROLLARY_N} in the demo"));
    }
    let case = corollary_case(n, &PrecisionPolicy::default()).map_err(|e| e.to_string())?;
    to_json(&json!({
        "only_trivial": case.only_trivial(),
        "case": case,
    }))
}

#[wasm_bindgen]
pub fn explore_case(p: u32, n: u32) -> Result<String, JsValue> {
    explore_case_json(p.into(), n.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn log_ratio_cf(a: u32, b: u32, q_max: u32) -> Result<String, JsValue> {
    log_ratio_cf_json(a.into(), b.into(), q_max.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn corollary_search(n: u32) -> Result<String, JsValue> {
    corollary_search_json(n.into()).map_err(|e| JsValue::from_str(&e))
}
