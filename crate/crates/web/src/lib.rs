//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON string; failures come back as `{"error": "..."}` so the
//! page never has to catch exceptions.

use std::str::FromStr;

use binratio::hypergeom::{hyp_eval, HypSeriesSpec, DEFAULT_TOL};
use binratio::identities::{lookup, registry, sweep, ParamGrid, Status};
use binratio::urn::{simulate, SimConfig, UrnChain};
use binratio::{Rational, Value};
use serde_json::{json, Value as Json};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest `n` the identity curve accepts; keeps a click responsive.
pub const MAX_CURVE_N: u32 = 60;
pub const MAX_URN_BALLS: u32 = 200;
pub const MAX_TRIALS: u64 = 200_000;
pub const MAX_Z_STEPS: u32 = 400;

fn respond(result: Result<Json, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn rational(name: &str, text: &str) -> Result<Option<Rational>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(None);
    }
    Rational::from_str(text)
        .map(Some)
        .map_err(|e| format!("{name}: {e}"))
}

fn rational_list(name: &str, text: &str) -> Result<Vec<Rational>, String> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| rational(name, s).map(|r| r.expect("non-empty")))
        .collect()
}

fn value_json(v: &Value) -> Json {
    match v {
        Value::Exact(r) => json!({ "text": r.to_string(), "approx": r.to_f64(), "bound": 0.0 }),
        Value::Approx(a) => json!({ "text": v.to_string(), "approx": a.value, "bound": a.error_bound }),
    }
}

/// Identity ids with their parameter names and formulas.
#[wasm_bindgen]
pub fn identity_catalog() -> String {
    let rows: Vec<Json> = registry()
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "formula": r.formula,
                "params": r.params.iter().map(|p| p.name()).collect::<Vec<_>>(),
                "exactness": r.exactness.to_string(),
            })
        })
        .collect();
    Json::Array(rows).to_string()
}

/// Both sides of one identity for `n = 0..=n_max`. Empty parameter
/// strings mean "not supplied".
#[wasm_bindgen]
pub fn identity_curve(id: &str, n_max: u32, a: &str, b: &str, c: &str, m: &str) -> String {
    respond(identity_curve_inner(id, n_max, a, b, c, m))
}

fn identity_curve_inner(
    id: &str,
    n_max: u32,
    a: &str,
    b: &str,
    c: &str,
    m: &str,
) -> Result<Json, String> {
    if n_max > MAX_CURVE_N {
        return Err(format!("n_max is capped at {MAX_CURVE_N}"));
    }
    let record = lookup(id).map_err(|e| e.to_string())?;
    let single = |r: Option<Rational>| r.into_iter().collect::<Vec<_>>();
    let m = match m.trim() {
        "" => None,
        t => Some(t.parse::<u32>().map_err(|e| format!("m: {e}"))?),
    };
    let grid = ParamGrid {
        a: single(rational("a", a)?),
        b: single(rational("b", b)?),
        c: single(rational("c", c)?),
        m: m.into_iter().collect(),
    };
    for p in record.params {
        let missing = match p.name() {
            "a" => grid.a.is_empty(),
            "b" => grid.b.is_empty(),
            "c" => grid.c.is_empty(),
            _ => grid.m.is_empty(),
        };
        if missing {
            return Err(format!("{id} needs parameter {}", p.name()));
        }
    }
    let reports = sweep(id, 0..=n_max, &grid, 1e-9).map_err(|e| e.to_string())?;
    let points: Vec<Json> = reports
        .iter()
        .map(|r| {
            json!({
                "n": r.params.n,
                "status": r.status.as_str(),
                "lhs": r.lhs.as_ref().map(value_json),
                "rhs": r.rhs.as_ref().map(value_json),
                "note": r.note,
            })
        })
        .collect();
    let failures = reports.iter().filter(|r| r.status == Status::Fail).count();
    Ok(json!({ "id": id, "formula": record.formula, "failures": failures, "points": points }))
}

/// Exact expected stopping time from every start, plus a simulation from
/// `start`. `kind` is `"ehrenfest"` or `"mabinogion"`; `target` is only
/// read for Ehrenfest.
#[wasm_bindgen]
pub fn urn_profile(kind: &str, total: u32, target: u32, start: u32, trials: u32, seed: u32) -> String {
    respond(urn_profile_inner(kind, total, target, start, trials, seed))
}

fn urn_profile_inner(
    kind: &str,
    total: u32,
    target: u32,
    start: u32,
    trials: u32,
    seed: u32,
) -> Result<Json, String> {
    if total > MAX_URN_BALLS {
        return Err(format!("at most {MAX_URN_BALLS} balls"));
    }
    if u64::from(trials) > MAX_TRIALS {
        return Err(format!("at most {MAX_TRIALS} trials"));
    }
    let chain = match kind {
        "ehrenfest" => UrnChain::ehrenfest(total, target),
        "mabinogion" => UrnChain::mabinogion(total),
        other => return Err(format!("unknown urn kind {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    let solution = chain.solve().map_err(|e| e.to_string())?;
    let expected: Vec<Json> = solution
        .expectations
        .iter()
        .map(|e| json!({ "text": e.to_string(), "approx": e.to_f64() }))
        .collect();
    let simulation = if trials > 0 {
        let cfg = SimConfig {
            trials: u64::from(trials),
            seed: u64::from(seed),
        };
        let s = simulate(&chain, start, &cfg).map_err(|e| e.to_string())?;
        json!({ "start": start, "trials": trials, "seed": seed, "mean": s.mean, "stderr": s.stderr })
    } else {
        Json::Null
    };
    Ok(json!({ "kind": kind, "total": total, "expected": expected, "simulation": simulation }))
}

/// `pFq(upper; lower; z)` on `steps+1` evenly spaced rational points of
/// `[z_lo, z_hi]`. Points where the series cannot be evaluated carry an
/// `error` field instead of a value.
#[wasm_bindgen]
pub fn hyp_curve(upper: &str, lower: &str, z_lo: &str, z_hi: &str, steps: u32) -> String {
    respond(hyp_curve_inner(upper, lower, z_lo, z_hi, steps))
}

fn hyp_curve_inner(
    upper: &str,
    lower: &str,
    z_lo: &str,
    z_hi: &str,
    steps: u32,
) -> Result<Json, String> {
    if steps == 0 || steps > MAX_Z_STEPS {
        return Err(format!("steps must be in 1..={MAX_Z_STEPS}"));
    }
    let upper = rational_list("upper", upper)?;
    let lower = rational_list("lower", lower)?;
    let lo = rational("z_lo", z_lo)?.ok_or("z_lo is required")?;
    let hi = rational("z_hi", z_hi)?.ok_or("z_hi is required")?;
    let width = (&hi - &lo) / Rational::from(steps);
    let points: Vec<Json> = (0..=steps)
        .map(|k| {
            let z = &lo + &width * Rational::from(k);
            let spec = HypSeriesSpec {
                upper: upper.clone(),
                lower: lower.clone(),
                z: z.clone(),
                tol: DEFAULT_TOL,
            };
            match hyp_eval(&spec) {
                Ok(v) => json!({ "z": z.to_string(), "x": z.to_f64(), "value": value_json(&v) }),
                Err(e) => json!({ "z": z.to_string(), "x": z.to_f64(), "error": e.to_string() }),
            }
        })
        .collect();
    Ok(json!({ "points": points }))
}
