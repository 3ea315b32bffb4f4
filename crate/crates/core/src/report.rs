//! JSON, CSV and plain-text rendering of verification reports.
//!
//! Columns: `id, params, lhs, rhs, status, residual, bound`. Rationals are
//! written as `p/q`; a bounded numeric value as `value ± bound`.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::{IdentityParams, VerifyReport};

#[derive(Serialize)]
struct JsonRow<'a> {
    id: &'a str,
    params: &'a IdentityParams,
    lhs: Option<String>,
    rhs: Option<String>,
    status: &'static str,
    residual: Option<f64>,
    bound: Option<f64>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    params: String,
    lhs: String,
    rhs: String,
    status: &'static str,
    residual: Option<f64>,
    bound: Option<f64>,
}

fn json_row(r: &VerifyReport) -> JsonRow<'_> {
    JsonRow {
        id: &r.id,
        params: &r.params,
        lhs: r.lhs.as_ref().map(|v| v.to_string()),
        rhs: r.rhs.as_ref().map(|v| v.to_string()),
        status: r.status.as_str(),
        residual: r.residual,
        bound: r.bound,
    }
}

pub fn report_json(r: &VerifyReport) -> serde_json::Value {
    serde_json::to_value(json_row(r)).expect("report rows serialize")
}

pub fn reports_json(reports: &[VerifyReport]) -> serde_json::Value {
    serde_json::Value::Array(reports.iter().map(report_json).collect())
}

/// Serialized in schema field order.
pub fn json_string(r: &VerifyReport) -> String {
    serde_json::to_string(&json_row(r)).expect("report rows serialize")
}

pub fn json_array_string(reports: &[VerifyReport]) -> String {
    let rows: Vec<_> = reports.iter().map(json_row).collect();
    serde_json::to_string_pretty(&rows).expect("report rows serialize")
}

pub fn write_csv<W: Write>(reports: &[VerifyReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(CsvRow {
            id: &r.id,
            params: r.params.to_string(),
            lhs: r.lhs.as_ref().map(|v| v.to_string()).unwrap_or_default(),
            rhs: r.rhs.as_ref().map(|v| v.to_string()).unwrap_or_default(),
            status: r.status.as_str(),
            residual: r.residual,
            bound: r.bound,
        })
        .map_err(|e| Error::Parse(e.to_string()))?;
    }
    if reports.is_empty() {
        w.write_record(["id", "params", "lhs", "rhs", "status", "residual", "bound"])
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// One line: `status id [params] lhs = rhs (residual ≤ bound) note`.
pub fn plain_line(r: &VerifyReport) -> String {
    let mut s = format!("{:<13} {} [{}]", r.status.as_str(), r.id, r.params);
    if let (Some(l), Some(rh)) = (&r.lhs, &r.rhs) {
        s.push_str(&format!(" lhs={l} rhs={rh}"));
    }
    if let Some(res) = r.residual {
        s.push_str(&format!(" residual={res:.3e}"));
        if let Some(b) = r.bound {
            s.push_str(&format!(" bound={b:.3e}"));
        }
    }
    if let Some(n) = &r.note {
        s.push_str(&format!(" ({n})"));
    }
    s
}
