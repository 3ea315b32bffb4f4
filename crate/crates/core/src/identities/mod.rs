//! Registry of closed forms for the double sums, with verification and
//! parameter sweeps.
//!
//! Every record pairs a left-hand side (usually a scaled
//! [`DoubleSumSpec`]) with a right-hand side that is either exact or mixes
//! exact pieces with bounded numeric ones. `verify` evaluates both and
//! compares them exactly or within the carried error bounds.

mod catalog;
mod recurrences;

use std::fmt;
use std::ops::RangeInclusive;
use std::sync::OnceLock;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::approx::Value;
use crate::double_sum::{eval_double_sum, DoubleSumSpec};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub use catalog::thm2_double_sum_via_hypergeometric;
pub use recurrences::{check_recurrences, RecurrenceKind, RecurrenceRange};

/// Parameters an identity may read. `n` is always present.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdentityParams {
    pub n: u32,
    pub a: Option<Rational>,
    pub b: Option<Rational>,
    pub c: Option<Rational>,
    pub m: Option<u32>,
    /// Inner summation index; used only by the recurrence checks.
    pub j: Option<u32>,
}

impl IdentityParams {
    pub fn new(n: u32) -> Self {
        IdentityParams {
            n,
            ..Default::default()
        }
    }

    pub fn with_a(mut self, a: Rational) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_b(mut self, b: Rational) -> Self {
        self.b = Some(b);
        self
    }

    pub fn with_c(mut self, c: Rational) -> Self {
        self.c = Some(c);
        self
    }

    pub fn with_m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_n(mut self, n: u32) -> Self {
        self.n = n;
        self
    }

    fn required<'a>(v: &'a Option<Rational>, name: &str) -> Result<&'a Rational> {
        v.as_ref()
            .ok_or_else(|| Error::domain(format!("parameter {name} is required")))
    }

    pub fn a(&self) -> Result<&Rational> {
        Self::required(&self.a, "a")
    }

    pub fn b(&self) -> Result<&Rational> {
        Self::required(&self.b, "b")
    }

    pub fn c(&self) -> Result<&Rational> {
        Self::required(&self.c, "c")
    }

    pub fn m(&self) -> Result<u32> {
        self.m
            .ok_or_else(|| Error::domain("parameter m is required"))
    }

    /// `(name, value)` pairs in a fixed order, omitting absent ones.
    pub fn named(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![("n", self.n.to_string())];
        let opt = [("a", &self.a), ("b", &self.b), ("c", &self.c)];
        for (name, v) in opt {
            if let Some(v) = v {
                out.push((name, v.to_string()));
            }
        }
        if let Some(m) = self.m {
            out.push(("m", m.to_string()));
        }
        if let Some(j) = self.j {
            out.push(("j", j.to_string()));
        }
        out
    }

    /// Keep only the parameters listed in `used`.
    fn restricted(&self, used: &[Param]) -> Self {
        IdentityParams {
            n: self.n,
            a: self.a.clone().filter(|_| used.contains(&Param::A)),
            b: self.b.clone().filter(|_| used.contains(&Param::B)),
            c: self.c.clone().filter(|_| used.contains(&Param::C)),
            m: self.m.filter(|_| used.contains(&Param::M)),
            j: self.j,
        }
    }
}

impl fmt::Display for IdentityParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .named()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl Serialize for IdentityParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let named = self.named();
        let mut map = s.serialize_map(Some(named.len()))?;
        for (k, v) in named {
            map.serialize_entry(k, &v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    A,
    B,
    C,
    M,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::A => "a",
            Param::B => "b",
            Param::C => "c",
            Param::M => "m",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    ExactRational,
    Numeric,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::ExactRational => "exact-rational",
            Exactness::Numeric => "numeric",
        })
    }
}

type ParamFn<T> = fn(&IdentityParams) -> Result<T>;

pub enum Lhs {
    /// `scale · DS(spec)`.
    DoubleSum {
        spec: ParamFn<DoubleSumSpec>,
        scale: ParamFn<Rational>,
    },
    Direct(ParamFn<Value>),
}

/// `finish(params, Σ_{k=first}^{last(n)} term(params, k))`.
///
/// `term` must not read `params.n`, so a sweep over increasing `n` can keep
/// extending one running sum.
pub struct SeriesRhs {
    pub first: u32,
    pub last: fn(u32) -> i64,
    pub term: fn(&IdentityParams, u32) -> Result<Rational>,
    pub finish: fn(&IdentityParams, Rational) -> Result<Value>,
}

pub enum Rhs {
    Closed(ParamFn<Value>),
    Series(SeriesRhs),
}

/// Further expressions that must all agree with the left-hand side.
pub struct AltForm {
    pub name: &'static str,
    pub eval: ParamFn<Value>,
}

pub struct IdentityRecord {
    pub id: &'static str,
    pub title: &'static str,
    /// Plain-text statement, `DS(n, top, bottom[, u, v])` denoting the
    /// weighted double sum.
    pub formula: &'static str,
    pub params: &'static [Param],
    /// Human-readable domain predicate.
    pub domain: &'static str,
    pub exactness: Exactness,
    pub check: fn(&IdentityParams) -> Result<()>,
    pub lhs: Lhs,
    pub rhs: Rhs,
    pub alt_forms: Vec<AltForm>,
}

impl fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("exactness", &self.exactness)
            .field("params", &self.params)
            .finish()
    }
}

impl IdentityRecord {
    /// Domain predicate, including presence of every parameter it reads.
    pub fn check_domain(&self, p: &IdentityParams) -> Result<()> {
        for param in self.params {
            let present = match param {
                Param::A => p.a.is_some(),
                Param::B => p.b.is_some(),
                Param::C => p.c.is_some(),
                Param::M => p.m.is_some(),
            };
            if !present {
                return Err(Error::domain(format!(
                    "{} requires parameter {}",
                    self.id,
                    param.name()
                )));
            }
        }
        (self.check)(p).map_err(|e| match e {
            Error::Domain(msg) => Error::Domain(format!("{msg}, excluded by {}", self.id)),
            other => other,
        })
    }

    /// The double sum behind the left-hand side, when there is one.
    pub fn double_sum(&self, p: &IdentityParams) -> Option<Result<DoubleSumSpec>> {
        match &self.lhs {
            Lhs::DoubleSum { spec, .. } => Some(spec(p)),
            Lhs::Direct(_) => None,
        }
    }

    pub fn lhs_value(&self, p: &IdentityParams) -> Result<Value> {
        match &self.lhs {
            Lhs::DoubleSum { spec, scale } => {
                let s = eval_double_sum(&spec(p)?)?;
                Ok(Value::Exact(scale(p)? * s))
            }
            Lhs::Direct(f) => f(p),
        }
    }

    pub fn rhs_value(&self, p: &IdentityParams) -> Result<Value> {
        match &self.rhs {
            Rhs::Closed(f) => f(p),
            Rhs::Series(s) => {
                let mut acc = Rational::zero();
                let last = (s.last)(p.n);
                let mut k = i64::from(s.first);
                while k <= last {
                    acc += (s.term)(p, k as u32)?;
                    k += 1;
                }
                (s.finish)(p, acc)
            }
        }
    }

    fn report(&self, p: &IdentityParams, lhs: Result<Value>, rhs: Result<Value>, tol: f64) -> VerifyReport {
        let mut report = compare(self, p, lhs, rhs, tol);
        if report.status == Status::Fail || self.alt_forms.is_empty() {
            return report;
        }
        let lhs = report.lhs.clone().expect("non-failing report has lhs");
        for alt in &self.alt_forms {
            let r = compare(self, p, Ok(lhs.clone()), (alt.eval)(p), tol);
            if r.status == Status::Fail {
                report.status = Status::Fail;
                report.note = Some(format!(
                    "form {} disagrees: {}",
                    alt.name,
                    r.rhs.map(|v| v.to_string()).or(r.note).unwrap_or_default()
                ));
                return report;
            }
        }
        report.note = Some(format!(
            "all of {} agree",
            self.alt_forms
                .iter()
                .map(|a| a.name)
                .collect::<Vec<_>>()
                .join(", ")
        ));
        report
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    ExactEqual,
    WithinBounds,
    Fail,
    /// Parameter tuple rejected by the domain predicate.
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::ExactEqual => "exact-equal",
            Status::WithinBounds => "within-bounds",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, Status::ExactEqual | Status::WithinBounds)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub id: String,
    pub params: IdentityParams,
    pub lhs: Option<Value>,
    pub rhs: Option<Value>,
    pub status: Status,
    /// `|lhs − rhs|` when it is not exactly zero.
    pub residual: Option<f64>,
    /// Acceptance threshold: carried error bounds plus tolerance.
    pub bound: Option<f64>,
    pub note: Option<String>,
}

impl VerifyReport {
    fn skipped(id: &str, params: IdentityParams, why: &Error) -> Self {
        VerifyReport {
            id: id.to_string(),
            params,
            lhs: None,
            rhs: None,
            status: Status::Skipped,
            residual: None,
            bound: None,
            note: Some(why.to_string()),
        }
    }
}

fn compare(
    rec: &IdentityRecord,
    p: &IdentityParams,
    lhs: Result<Value>,
    rhs: Result<Value>,
    tol: f64,
) -> VerifyReport {
    let mut report = VerifyReport {
        id: rec.id.to_string(),
        params: p.clone(),
        lhs: None,
        rhs: None,
        status: Status::Fail,
        residual: None,
        bound: None,
        note: None,
    };
    let (lhs, rhs) = match (lhs, rhs) {
        (Ok(l), Ok(r)) => (l, r),
        (l, r) => {
            let err = l.as_ref().err().or(r.as_ref().err()).map(|e| e.to_string());
            report.lhs = l.ok();
            report.rhs = r.ok();
            report.note = err;
            return report;
        }
    };
    match (&lhs, &rhs) {
        (Value::Exact(l), Value::Exact(r)) => {
            if l == r {
                report.status = Status::ExactEqual;
            } else {
                report.residual = Some((l - r).abs().to_f64());
            }
        }
        _ if rec.exactness == Exactness::ExactRational => {
            report.note = Some("exact identity produced a non-rational side".into());
        }
        _ => {
            let d = (lhs.clone() - rhs.clone()).approx();
            let threshold = d.error_bound + tol;
            report.residual = Some(d.value.abs());
            report.bound = Some(threshold);
            if d.value.abs() <= threshold {
                report.status = Status::WithinBounds;
            }
        }
    }
    report.lhs = Some(lhs);
    report.rhs = Some(rhs);
    report
}

pub fn registry() -> &'static [IdentityRecord] {
    static REGISTRY: OnceLock<Vec<IdentityRecord>> = OnceLock::new();
    REGISTRY.get_or_init(catalog::build)
}

pub fn lookup(id: &str) -> Result<&'static IdentityRecord> {
    registry()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Evaluate both sides of one identity. Parameters the identity does not
/// read are dropped from the report.
pub fn verify(id: &str, params: &IdentityParams, tol: f64) -> Result<VerifyReport> {
    let rec = lookup(id)?;
    let p = params.restricted(rec.params);
    rec.check_domain(&p)?;
    Ok(rec.report(&p, rec.lhs_value(&p), rec.rhs_value(&p), tol))
}

/// Parameter values a sweep ranges over; each identity uses the lists for
/// the parameters it reads.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamGrid {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
    pub m: Vec<u32>,
}

impl Default for ParamGrid {
    fn default() -> Self {
        let q = Rational::new;
        let ab = vec![q(-5, 2), q(-1, 3), q(1, 4), q(1, 1), q(7, 2)];
        ParamGrid {
            a: ab.clone(),
            b: ab,
            c: vec![q(-3, 1), q(-1, 2), q(1, 3), q(1, 1), q(2, 1)],
            m: (0..=10).collect(),
        }
    }
}

impl ParamGrid {
    /// Cartesian product over `used`, in `a, b, c, m` nesting order.
    pub fn points(&self, used: &[Param]) -> Vec<IdentityParams> {
        let mut pts = vec![IdentityParams::default()];
        for param in [Param::A, Param::B, Param::C, Param::M] {
            if !used.contains(&param) {
                continue;
            }
            pts = pts
                .into_iter()
                .flat_map(|p| -> Vec<IdentityParams> {
                    match param {
                        Param::A => self.a.iter().map(|v| p.clone().with_a(v.clone())).collect(),
                        Param::B => self.b.iter().map(|v| p.clone().with_b(v.clone())).collect(),
                        Param::C => self.c.iter().map(|v| p.clone().with_c(v.clone())).collect(),
                        Param::M => self.m.iter().map(|&v| p.clone().with_m(v)).collect(),
                    }
                })
                .collect();
        }
        pts
    }
}

/// One report per `(n, grid point)`, ordered by `n` and then grid position.
/// Points outside the domain are reported as skipped.
pub fn sweep(
    id: &str,
    n_range: RangeInclusive<u32>,
    grid: &ParamGrid,
    tol: f64,
) -> Result<Vec<VerifyReport>> {
    let rec = lookup(id)?;
    let mut out: Vec<(u32, usize, VerifyReport)> = Vec::new();
    for (idx, point) in grid.points(rec.params).into_iter().enumerate() {
        let mut running = RunningSeries::default();
        for n in n_range.clone() {
            let p = point.clone().with_n(n);
            let report = match rec.check_domain(&p) {
                Err(e) => VerifyReport::skipped(rec.id, p, &e),
                Ok(()) => {
                    let rhs = match &rec.rhs {
                        Rhs::Closed(f) => f(&p),
                        Rhs::Series(s) => running.advance(s, &p),
                    };
                    rec.report(&p, rec.lhs_value(&p), rhs, tol)
                }
            };
            out.push((n, idx, report));
        }
    }
    out.sort_by_key(|(n, idx, _)| (*n, *idx));
    Ok(out.into_iter().map(|(_, _, r)| r).collect())
}

/// Partial sum of a [`SeriesRhs`] carried across increasing `n`.
#[derive(Default)]
struct RunningSeries {
    next: Option<i64>,
    acc: Rational,
    broken: Option<Error>,
}

impl RunningSeries {
    fn advance(&mut self, s: &SeriesRhs, p: &IdentityParams) -> Result<Value> {
        let mut k = self.next.unwrap_or(i64::from(s.first));
        let last = (s.last)(p.n);
        while self.broken.is_none() && k <= last {
            match (s.term)(p, k as u32) {
                Ok(t) => self.acc += t,
                Err(e) => self.broken = Some(e),
            }
            k += 1;
        }
        self.next = Some(k);
        if let Some(e) = &self.broken {
            return Err(e.clone());
        }
        (s.finish)(p, self.acc.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn registry_shape() {
        let reg = registry();
        assert!(reg.len() >= 28);
        let mut ids: Vec<_> = reg.iter().map(|r| r.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), reg.len(), "duplicate ids");
        assert_eq!(lookup("wansum").unwrap().exactness, Exactness::ExactRational);
        assert_eq!(
            lookup("thm2_hyp_degenerate").unwrap().exactness,
            Exactness::Numeric
        );
        assert!(matches!(lookup("nope"), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn grid_points_follow_used_params() {
        let g = ParamGrid::default();
        assert_eq!(g.points(&[]).len(), 1);
        assert_eq!(g.points(&[Param::A, Param::B]).len(), 25);
        let pts = g.points(&[Param::B, Param::M]);
        assert_eq!(pts.len(), 55);
        assert_eq!(pts[0].b, Some(q(-5, 2)));
        assert_eq!(pts[0].m, Some(0));
        assert_eq!(pts[1].m, Some(1));
    }

    #[test]
    fn params_display_and_json() {
        let p = IdentityParams::new(1).with_a(q(1, 3)).with_m(2);
        assert_eq!(p.to_string(), "n=1;a=1/3;m=2");
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"n":"1","a":"1/3","m":"2"}"#);
    }

    #[test]
    fn unused_params_are_dropped() {
        let p = IdentityParams::new(1).with_a(q(1, 3));
        let r = verify("wansum", &p, 1e-9).unwrap();
        assert_eq!(r.params, IdentityParams::new(1));
    }
}
