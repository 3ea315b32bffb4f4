//! Floating values with a rigorous absolute error bound, and the
//! exact-or-approximate `Value` used wherever a closed form mixes rationals
//! with transcendental pieces (logarithms, non-terminating series, Γ).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rational;

const EPS: f64 = f64::EPSILON;

/// `value` is within `error_bound` of the true quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxValue {
    pub value: f64,
    pub error_bound: f64,
}

impl ApproxValue {
    pub fn new(value: f64, error_bound: f64) -> Self {
        debug_assert!(error_bound >= 0.0, "negative error bound {error_bound}");
        ApproxValue {
            value,
            error_bound: error_bound.max(0.0),
        }
    }

    pub fn exact(value: f64) -> Self {
        ApproxValue::new(value, 0.0)
    }

    /// Nearest double to `r`, with half an ulp (rounded up to a full one).
    pub fn from_rational(r: &Rational) -> Self {
        let v = r.to_f64();
        ApproxValue::new(v, v.abs() * EPS)
    }

    /// `log(r)` for a positive rational.
    pub fn ln_rational(r: &Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::domain(format!("log of nonpositive value {r}")));
        }
        let x = r.to_f64();
        let v = x.ln();
        // x carries relative error ≤ eps, which moves ln by ≤ eps; ln itself
        // is faithful to within an ulp or two of the result.
        Ok(ApproxValue::new(v, 2.0 * EPS + 2.0 * v.abs() * EPS))
    }

    pub fn ln2() -> Self {
        ApproxValue::new(std::f64::consts::LN_2, std::f64::consts::LN_2 * EPS)
    }

    /// True when `x` lies inside `[value - bound - slack, value + bound + slack]`.
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        (self.value - x).abs() <= self.error_bound + slack
    }

    pub fn abs_upper(&self) -> f64 {
        self.value.abs() + self.error_bound
    }

    pub fn recip(&self) -> Result<Self> {
        let lo = self.value.abs() - self.error_bound;
        if lo <= 0.0 {
            return Err(Error::DivisionByZero);
        }
        let v = 1.0 / self.value;
        // |1/x - 1/y| ≤ e / (|y| (|y| - e))
        let b = self.error_bound / (self.value.abs() * lo) + v.abs() * EPS;
        Ok(ApproxValue::new(v, b))
    }

    pub fn div(&self, rhs: &ApproxValue) -> Result<Self> {
        Ok(*self * rhs.recip()?)
    }

    fn rounded(value: f64, propagated: f64) -> Self {
        ApproxValue::new(value, propagated + value.abs() * EPS)
    }
}

impl Add for ApproxValue {
    type Output = ApproxValue;
    fn add(self, rhs: ApproxValue) -> ApproxValue {
        ApproxValue::rounded(self.value + rhs.value, self.error_bound + rhs.error_bound)
    }
}

impl Sub for ApproxValue {
    type Output = ApproxValue;
    fn sub(self, rhs: ApproxValue) -> ApproxValue {
        ApproxValue::rounded(self.value - rhs.value, self.error_bound + rhs.error_bound)
    }
}

impl Mul for ApproxValue {
    type Output = ApproxValue;
    fn mul(self, rhs: ApproxValue) -> ApproxValue {
        let b = self.value.abs() * rhs.error_bound
            + rhs.value.abs() * self.error_bound
            + self.error_bound * rhs.error_bound;
        ApproxValue::rounded(self.value * rhs.value, b)
    }
}

impl Neg for ApproxValue {
    type Output = ApproxValue;
    fn neg(self) -> ApproxValue {
        ApproxValue::new(-self.value, self.error_bound)
    }
}

impl fmt::Display for ApproxValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.3e}", self.value, self.error_bound)
    }
}

/// Exact rational, or a bounded floating approximation.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    Approx(ApproxValue),
}

impl Value {
    pub fn approx(&self) -> ApproxValue {
        match self {
            Value::Exact(r) => ApproxValue::from_rational(r),
            Value::Approx(a) => *a,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64(),
            Value::Approx(a) => a.value,
        }
    }

    /// Zero exactly, or zero within the carried bound plus `tol`.
    pub fn is_zero_within(&self, tol: f64) -> bool {
        match self {
            Value::Exact(r) => r.is_zero(),
            Value::Approx(a) => a.contains(0.0, tol),
        }
    }

    pub fn div(&self, rhs: &Value) -> Result<Value> {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Ok(Value::Exact(a.checked_div(b)?)),
            _ => Ok(Value::Approx(self.approx().div(&rhs.approx())?)),
        }
    }

    /// Compact rendering for reports: `p/q` when exact, shortest
    /// round-trip decimal otherwise.
    pub fn render(&self) -> String {
        match self {
            Value::Exact(r) => r.to_string(),
            Value::Approx(a) => format!("{}", a.value),
        }
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Exact(r)
    }
}

impl From<ApproxValue> for Value {
    fn from(a: ApproxValue) -> Self {
        Value::Approx(a)
    }
}

macro_rules! value_op {
    ($tr:ident, $m:ident) => {
        impl $tr for Value {
            type Output = Value;
            fn $m(self, rhs: Value) -> Value {
                match (self, rhs) {
                    (Value::Exact(a), Value::Exact(b)) => Value::Exact(a.$m(b)),
                    (a, b) => Value::Approx(a.approx().$m(b.approx())),
                }
            }
        }
        impl<'a, 'b> $tr<&'b Value> for &'a Value {
            type Output = Value;
            fn $m(self, rhs: &'b Value) -> Value {
                match (self, rhs) {
                    (Value::Exact(a), Value::Exact(b)) => Value::Exact(a.$m(b)),
                    (a, b) => Value::Approx(a.approx().$m(b.approx())),
                }
            }
        }
        impl $tr<Rational> for Value {
            type Output = Value;
            fn $m(self, rhs: Rational) -> Value {
                self.$m(Value::Exact(rhs))
            }
        }
    };
}

value_op!(Add, add);
value_op!(Sub, sub);
value_op!(Mul, mul);

impl Neg for Value {
    type Output = Value;
    fn neg(self) -> Value {
        match self {
            Value::Exact(r) => Value::Exact(-r),
            Value::Approx(a) => Value::Approx(-a),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Approx(a) => write!(f, "{a}"),
        }
    }
}
