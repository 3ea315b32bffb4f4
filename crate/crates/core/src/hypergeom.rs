//! ₂F₁ and ₃F₂ at rational arguments.
//!
//! A terminating series (some upper parameter a nonpositive integer) is
//! summed exactly. Otherwise the series is summed in floating point with a
//! rigorous bound on the discarded tail and on accumulated rounding, so
//! callers can compare two sides with `|lhs − rhs| ≤ bound_l + bound_r + tol`
//! instead of guessing a tolerance.
//!
//! Tail bounds:
//! * `|z| < 1`: once every `a_i + L` and `b_i + L` is positive, each factor
//!   `(a_i+ℓ)/(b_i+ℓ)` of the term ratio is monotone in ℓ, so
//!   `r* = |z|·Π max(1, (a_i+L)/(b_i+L))` bounds all later ratios and the
//!   tail from term `L` on is at most `|t_L|/(1−r*)`. The `ℓ!` is paired with
//!   the last upper parameter as an extra lower parameter equal to 1.
//! * `z = 1` (₂F₁ with `s = c−a−b > 0`): `c` is first raised by an integer
//!   `K` through the exact contiguous factor
//!   `F(a,b;c;1) = (c−a)(c−b)/(c(c−a−b)) · F(a,b;c+1;1)`, which makes the
//!   terms decay like `ℓ^{−s−K−1}`. The remaining tail is bounded by
//!   `|t_L|(1 + (L+β)/(s+K))` once the ratio satisfies
//!   `ρ(ℓ) ≤ 1 − (s+K+1)/(ℓ+1+β)` for all `ℓ ≥ L`, a linear condition in ℓ
//!   checked exactly.

use crate::approx::{ApproxValue, Value};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::special::{binom, gamma_numeric};

pub type HypValue = Value;

pub const DEFAULT_TOL: f64 = 1e-15;
const MAX_TERMS: usize = 200_000;
const EPS: f64 = f64::EPSILON;
/// Target decay exponent after the contiguous shift at `z = 1`.
const GAUSS_SHIFT_TARGET: i64 = 20;
/// Σ|t_l| above this multiple of the float sum reruns the series in exact
/// arithmetic.
const CANCELLATION_RATIO: f64 = 1024.0;
const EXACT_TERMS_MAX: u32 = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub struct HypSeriesSpec {
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
    pub z: Rational,
    /// Stopping tolerance for non-terminating series, relative to
    /// `max(1, |partial sum|)`.
    pub tol: f64,
}

impl HypSeriesSpec {
    pub fn f21(a: Rational, b: Rational, c: Rational, z: Rational) -> Self {
        HypSeriesSpec {
            upper: vec![a, b],
            lower: vec![c],
            z,
            tol: DEFAULT_TOL,
        }
    }

    pub fn f32(
        a1: Rational,
        a2: Rational,
        a3: Rational,
        b1: Rational,
        b2: Rational,
        z: Rational,
    ) -> Self {
        HypSeriesSpec {
            upper: vec![a1, a2, a3],
            lower: vec![b1, b2],
            z,
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn is_2f1(&self) -> bool {
        self.upper.len() == 2 && self.lower.len() == 1
    }

    fn check_shape(&self) -> Result<()> {
        let ok = matches!((self.upper.len(), self.lower.len()), (2, 1) | (3, 2));
        if !ok {
            return Err(Error::domain(format!(
                "only 2F1 and 3F2 are supported, got {}F{}",
                self.upper.len(),
                self.lower.len()
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::domain("tolerance must be positive"));
        }
        Ok(())
    }

    /// Index of the last nonzero term when the series terminates.
    pub fn terminating_degree(&self) -> Option<u32> {
        self.upper
            .iter()
            .filter(|a| a.is_nonpositive_integer())
            .filter_map(|a| a.to_i64())
            .filter_map(|a| u32::try_from(-a).ok())
            .min()
    }

    /// Exact ratio `t_{ℓ+1}/t_ℓ`. Errors when a lower parameter makes the
    /// next term undefined.
    fn term_ratio(&self, l: u32) -> Result<Rational> {
        let lr = Rational::from(l);
        let mut den = Rational::from(l + 1);
        for b in &self.lower {
            den *= b + &lr;
        }
        if den.is_zero() {
            return Err(Error::UndefinedSeries(format!(
                "lower parameter reaches zero at term {}",
                l + 1
            )));
        }
        let mut num = self.z.clone();
        for a in &self.upper {
            num *= a + &lr;
        }
        num.checked_div(&den)
    }
}

impl std::fmt::Display for HypSeriesSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[Rational]| {
            v.iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "{}F{}({}; {}; {})",
            self.upper.len(),
            self.lower.len(),
            join(&self.upper),
            join(&self.lower),
            self.z
        )
    }
}

/// Evaluate the series. `Value::Exact` is returned iff the series
/// terminates.
pub fn hyp_eval(spec: &HypSeriesSpec) -> Result<HypValue> {
    spec.check_shape()?;
    if let Some(degree) = spec.terminating_degree() {
        return sum_terminating(spec, degree).map(Value::Exact);
    }
    if let Some(b) = spec.lower.iter().find(|b| b.is_nonpositive_integer()) {
        return Err(Error::UndefinedSeries(format!(
            "lower parameter {b} is a nonpositive integer and the series does not terminate first"
        )));
    }
    let abs_z = spec.z.abs();
    if abs_z < Rational::one() {
        return sum_geometric(spec).map(Value::Approx);
    }
    if spec.z.is_one() && spec.is_2f1() {
        let s = &spec.lower[0] - &spec.upper[0] - &spec.upper[1];
        if s.is_positive() {
            return sum_at_one(spec, &s).map(Value::Approx);
        }
        return Err(Error::Divergent(format!(
            "{spec}: z = 1 needs c − a − b > 0, got {s}"
        )));
    }
    if abs_z.is_one() {
        return Err(Error::Divergent(format!(
            "{spec}: |z| = 1 is only supported for 2F1 at z = 1"
        )));
    }
    Err(Error::Divergent(format!("{spec}: |z| > 1 and the series does not terminate")))
}

fn sum_terminating(spec: &HypSeriesSpec, degree: u32) -> Result<Rational> {
    let mut term = Rational::one();
    let mut total = Rational::one();
    for l in 0..degree {
        term *= spec.term_ratio(l)?;
        total += &term;
    }
    Ok(total)
}

/// Relative error bound of the `l`-th floating term: each step rounds the
/// converted ratio and the product.
fn term_rel_err(l: usize) -> f64 {
    3.0 * (l as f64 + 1.0) * EPS
}

/// Rational → f64, nudged up so the result is not below the true value.
fn upper_f64(r: &Rational) -> f64 {
    let v = r.to_f64();
    v + v.abs() * 4.0 * EPS
}

/// `r*` for `|z| < 1`, or `None` while some shifted parameter is nonpositive.
fn ratio_majorant(spec: &HypSeriesSpec, l: u32) -> Option<f64> {
    let lr = Rational::from(l);
    let one = Rational::one();
    let lowers = spec.lower.iter().chain(std::iter::once(&one));
    let mut bound = spec.z.abs();
    for (a, b) in spec.upper.iter().zip(lowers) {
        let na = a + &lr;
        let nb = b + &lr;
        if !na.is_positive() || !nb.is_positive() {
            return None;
        }
        let f = na / nb;
        if f > one {
            bound *= f;
        }
    }
    Some(upper_f64(&bound))
}

fn sum_geometric(spec: &HypSeriesSpec) -> Result<ApproxValue> {
    let mut term = 1.0f64;
    let mut sum = 0.0f64;
    let mut abs_sum = 0.0f64;
    let mut rounding = 0.0f64;
    for l in 0..MAX_TERMS {
        let lu = l as u32;
        if let Some(r) = ratio_majorant(spec, lu) {
            if r < 1.0 {
                let tail = term.abs() * (1.0 + term_rel_err(l)) / (1.0 - r);
                if tail <= spec.tol * sum.abs().max(1.0) {
                    if abs_sum > CANCELLATION_RATIO * sum.abs().max(1.0) {
                        return sum_geometric_exact(spec);
                    }
                    return Ok(ApproxValue::new(sum, tail + rounding));
                }
            }
        }
        sum += term;
        abs_sum += term.abs();
        rounding += term.abs() * term_rel_err(l) + sum.abs() * EPS;
        term *= spec.term_ratio(lu)?.to_f64();
    }
    Err(Error::NotConverged { terms: MAX_TERMS })
}

/// Exact partial sums and terms; the stopping test is rerun against the
/// exact partial sum, so only the tail and one rounding remain as error.
fn sum_geometric_exact(spec: &HypSeriesSpec) -> Result<ApproxValue> {
    let mut term = Rational::one();
    let mut sum = Rational::zero();
    for l in 0..EXACT_TERMS_MAX {
        if let Some(r) = ratio_majorant(spec, l) {
            if r < 1.0 {
                let tail = term.abs().to_f64() * (1.0 + 2.0 * EPS) / (1.0 - r);
                let value = sum.to_f64();
                if tail <= spec.tol * value.abs().max(1.0) {
                    return Ok(ApproxValue::new(value, tail + value.abs() * EPS));
                }
            }
        }
        sum += &term;
        term *= spec.term_ratio(l)?;
    }
    Err(Error::NotConverged {
        terms: EXACT_TERMS_MAX as usize,
    })
}

fn sum_at_one(spec: &HypSeriesSpec, s: &Rational) -> Result<ApproxValue> {
    let (a, b, c) = (&spec.upper[0], &spec.upper[1], &spec.lower[0]);

    // Integer shift K: decay exponent at least GAUSS_SHIFT_TARGET and c+K > 0.
    let want_s = (Rational::from(GAUSS_SHIFT_TARGET) - s).floor();
    let want_c = (-c).floor() + 1;
    let shift = want_s
        .max(want_c)
        .max(0.into())
        .to_string()
        .parse::<u32>()
        .map_err(|_| Error::domain("contiguous shift out of range"))?;

    let mut multiplier = Rational::one();
    for k in 0..shift {
        let ck = c + Rational::from(k);
        let num = (&ck - a) * (&ck - b);
        let den = &ck * (s + Rational::from(k));
        multiplier *= num.checked_div(&den).map_err(|_| {
            Error::UndefinedSeries(format!("lower parameter {c} hits zero during shift"))
        })?;
    }
    if multiplier.is_zero() {
        // Γ(c−a) or Γ(c−b) has a pole: the sum is exactly zero.
        return Ok(ApproxValue::exact(0.0));
    }

    let shifted_c = c + Rational::from(shift);
    let shifted_s = s + Rational::from(shift);
    let shifted = HypSeriesSpec::f21(a.clone(), b.clone(), shifted_c.clone(), Rational::one());
    let ab = a * b;
    let excess = &ab - &shifted_c;
    let beta = &shifted_c
        + Rational::one()
        + if excess.is_positive() {
            excess
        } else {
            Rational::zero()
        };
    let q = &shifted_s + Rational::one();
    let tail_factor = |l: u32| -> Option<f64> {
        let lr = Rational::from(l);
        if !(a + &lr).is_positive() || !(b + &lr).is_positive() {
            return None;
        }
        // (q)L(β−c') + (c'−ab)(L+1+β) − q c' ≥ 0, with positive slope in L.
        let cond = &q * &lr * (&beta - &shifted_c)
            + (&shifted_c - &ab) * (&lr + Rational::one() + &beta)
            - &q * &shifted_c;
        if cond.is_negative() {
            return None;
        }
        Some(upper_f64(&(Rational::one() + (&lr + &beta) / &shifted_s)))
    };

    let mut term = 1.0f64;
    let mut sum = 0.0f64;
    let mut rounding = 0.0f64;
    for l in 0..MAX_TERMS {
        let lu = l as u32;
        if let Some(f) = tail_factor(lu) {
            let tail = term.abs() * (1.0 + term_rel_err(l)) * f;
            if tail <= spec.tol * sum.abs().max(1.0) {
                let m = multiplier.to_f64();
                let value = m * sum;
                let bound = m.abs() * (tail + rounding) + value.abs() * 3.0 * EPS;
                return Ok(ApproxValue::new(value, bound));
            }
        }
        sum += term;
        rounding += term.abs() * term_rel_err(l) + sum.abs() * EPS;
        term *= shifted.term_ratio(lu)?.to_f64();
    }
    Err(Error::NotConverged { terms: MAX_TERMS })
}

/// `Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b))`, the value of ₂F₁(a, b; c; 1).
pub fn gauss_value(a: &Rational, b: &Rational, c: &Rational) -> Result<ApproxValue> {
    let s = c - a - b;
    let ca = c - a;
    let cb = c - b;
    if !s.is_positive() || !c.is_positive() || !ca.is_positive() || !cb.is_positive() {
        return Err(Error::domain(format!(
            "Gauss evaluation needs c−a−b, c, c−a, c−b > 0 (a={a}, b={b}, c={c})"
        )));
    }
    let num = gamma_numeric(c)? * gamma_numeric(&s)?;
    let den = gamma_numeric(&ca)? * gamma_numeric(&cb)?;
    num.div(&den)
}

/// Image of a ₂F₁ under `z ↦ z/(z−1)`, together with the prefactor
/// `(1−z)^{−a}` so that `original = factor · F(image)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PfaffImage {
    pub spec: HypSeriesSpec,
    pub factor: Value,
}

impl PfaffImage {
    pub fn evaluate(&self) -> Result<Value> {
        Ok(self.factor.clone() * hyp_eval(&self.spec)?)
    }
}

/// `₂F₁(a,b;c;z) = (1−z)^{−a} ₂F₁(a, c−b; c; z/(z−1))`.
///
/// The factor is exact when `a` is an integer and numeric otherwise.
pub fn pfaff_transform(spec: &HypSeriesSpec) -> Result<PfaffImage> {
    if !spec.is_2f1() {
        return Err(Error::domain("Pfaff transformation applies to 2F1 only"));
    }
    if spec.z.is_one() {
        return Err(Error::Pole("Pfaff transformation is singular at z = 1".into()));
    }
    let (a, b, c) = (&spec.upper[0], &spec.upper[1], &spec.lower[0]);
    let one_minus_z = Rational::one() - &spec.z;
    let image_z = spec.z.checked_div(&(&spec.z - Rational::one()))?;
    let factor = match a.to_i64() {
        Some(k) => Value::Exact(one_minus_z.pow(-k)?),
        None => {
            if !one_minus_z.is_positive() {
                return Err(Error::domain(format!(
                    "(1−z)^(−a) is not real for z = {} and a = {a}",
                    spec.z
                )));
            }
            let ln = ApproxValue::ln_rational(&one_minus_z)?;
            let af = a.to_f64();
            let y = -af * ln.value;
            let y_err = af.abs() * ln.error_bound + y.abs() * 2.0 * EPS;
            let v = y.exp();
            // d(e^y) = e^y dy, plus the rounding of exp itself.
            let bound = v * (y_err.exp_m1() + 2.0 * EPS);
            Value::Approx(ApproxValue::new(v, bound))
        }
    };
    Ok(PfaffImage {
        spec: HypSeriesSpec {
            upper: vec![a.clone(), c - b],
            lower: vec![c.clone()],
            z: image_z,
            tol: spec.tol,
        },
        factor,
    })
}

/// Residual of Gauss' contiguous relation at z = ½:
///
/// ```text
///   ₂F₁(2, β+1; γ+1; ½) − (2γ/β)((β−2γ+2)·₂F₁(1, β; γ; ½) + 2γ − 2)
/// ```
pub fn contiguous_2f1_residual(beta: &Rational, gamma: &Rational) -> Result<Value> {
    if beta.is_zero() {
        return Err(Error::domain("contiguous relation needs β ≠ 0"));
    }
    if gamma.is_nonpositive_integer() {
        return Err(Error::domain(format!(
            "γ = {gamma} is a nonpositive integer"
        )));
    }
    let half = Rational::new(1, 2);
    let one = Rational::one();
    let two = Rational::from(2u32);
    let lhs = hyp_eval(&HypSeriesSpec::f21(
        two.clone(),
        beta + &one,
        gamma + &one,
        half.clone(),
    ))?;
    let inner = hyp_eval(&HypSeriesSpec::f21(one.clone(), beta.clone(), gamma.clone(), half))?;
    let two_gamma = &two * gamma;
    let coef = (beta - &two_gamma + &two).clone();
    let scale = two_gamma.checked_div(beta)?;
    let rhs = (inner * coef + Value::Exact(&two_gamma - &two)) * scale;
    Ok(lhs - rhs)
}

/// Residual of the ₃F₂ contiguous relation
///
/// ```text
///   (n+2)·₃F₂(1,1,n+3;2,2;x) − (n+1)·₃F₂(1,1,n+2;2,2;x) − ₂F₁(1,n+2;2;x)
/// ```
pub fn contiguous_3f2_residual(n: u32, x: &Rational) -> Result<Value> {
    if x.abs() >= Rational::one() {
        return Err(Error::domain(format!("contiguous 3F2 residual needs |x| < 1, got {x}")));
    }
    let one = Rational::one();
    let two = Rational::from(2u32);
    let nr = Rational::from(n);
    let f = |third: Rational| {
        hyp_eval(&HypSeriesSpec::f32(
            one.clone(),
            one.clone(),
            third,
            two.clone(),
            two.clone(),
            x.clone(),
        ))
    };
    let upper = f(&nr + Rational::from(3u32))? * (&nr + Rational::from(2u32));
    let lower = f(&nr + Rational::from(2u32))? * (&nr + Rational::one());
    let g = hyp_eval(&HypSeriesSpec::f21(
        one.clone(),
        &nr + Rational::from(2u32),
        two.clone(),
        x.clone(),
    ))?;
    Ok(upper - lower - g)
}

/// `Σ_{i≤k} C(top,i) x^i` through its terminating ₂F₁ form
/// `x^k C(top,k) ₂F₁(1, −k; top+1−k; −1/x)`.
pub fn binomial_prefix_terminating(top: &Rational, k: u32, x: &Rational) -> Result<Value> {
    let kr = Rational::from(k);
    let neg_inv = -(x.recip()?);
    let f = hyp_eval(&HypSeriesSpec::f21(
        Rational::one(),
        -kr.clone(),
        top + Rational::one() - &kr,
        neg_inv,
    ))?;
    Ok(f * (x.pow(i64::from(k))? * binom(top, k)))
}

/// `Σ_{i≤k} C(top,i) x^i` through the Pfaff-transformed form
/// `x^{k+1}/(x+1) · C(top,k) · ₂F₁(1, top+1; top+1−k; 1/(x+1))`.
pub fn binomial_prefix_hypergeometric(top: &Rational, k: u32, x: &Rational) -> Result<Value> {
    let xp1 = x + Rational::one();
    let z = xp1.recip()?;
    let kr = Rational::from(k);
    let f = hyp_eval(&HypSeriesSpec::f21(
        Rational::one(),
        top + Rational::one(),
        top + Rational::one() - &kr,
        z,
    ))?;
    let scale = x.pow(i64::from(k) + 1)?.checked_div(&xp1)? * binom(top, k);
    Ok(f * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn r(p: i64) -> Rational {
        Rational::from(p)
    }

    #[test]
    fn cancelling_series_is_summed_exactly() {
        // (1 − z)^(−a) with large alternating terms
        let spec = HypSeriesSpec {
            upper: vec![q(81, 2), r(1)],
            lower: vec![r(1)],
            z: q(-9, 10),
            tol: DEFAULT_TOL,
        };
        let got = hyp_eval(&spec).unwrap().approx();
        let want = 1.9f64.powf(-40.5);
        assert!((got.value - want).abs() <= got.error_bound);
        assert!(got.error_bound < 1e-14, "{}", got.error_bound);
    }

    #[test]
    fn zero_upper_parameter_gives_one() {
        let v = hyp_eval(&HypSeriesSpec::f21(r(0), q(7, 3), q(5, 2), q(9, 10))).unwrap();
        assert_eq!(v, Value::Exact(Rational::one()));
        // even outside the disc: the series is the constant 1
        let v = hyp_eval(&HypSeriesSpec::f21(r(0), r(4), r(3), r(17))).unwrap();
        assert_eq!(v, Value::Exact(Rational::one()));
    }

    #[test]
    fn two_term_series() {
        let v = hyp_eval(&HypSeriesSpec::f21(r(1), r(-1), r(2), q(1, 2))).unwrap();
        assert_eq!(v, Value::Exact(q(3, 4)));
    }

    #[test]
    fn one_plus_log_two() {
        let spec = HypSeriesSpec::f32(r(1), r(1), r(3), r(2), r(2), q(1, 2));
        let v = hyp_eval(&spec).unwrap();
        let want = 1.0 + std::f64::consts::LN_2;
        assert!(!v.is_exact());
        assert!(v.approx().contains(want, 0.0), "{v}");
        assert!(v.approx().error_bound < 1e-13);
    }

    #[test]
    fn geometric_series_with_rising_ratio() {
        // 2F1(1,1;2;z) = −log(1−z)/z; term ratio increases towards z.
        let v = hyp_eval(&HypSeriesSpec::f21(r(1), r(1), r(2), q(9, 10))).unwrap();
        let want = -(0.1f64).ln() / 0.9;
        assert!(v.approx().contains(want, 1e-15), "{v}");
    }

    #[test]
    fn negative_argument() {
        // 2F1(1,1;2;−1/2) = 2 log(3/2)
        let v = hyp_eval(&HypSeriesSpec::f21(r(1), r(1), r(2), q(-1, 2))).unwrap();
        assert!(v.approx().contains(2.0 * 1.5f64.ln(), 1e-15), "{v}");
    }

    #[test]
    fn divergence_and_undefined() {
        let err = hyp_eval(&HypSeriesSpec::f21(r(1), r(1), r(2), r(2))).unwrap_err();
        assert!(matches!(err, Error::Divergent(_)));
        let err = hyp_eval(&HypSeriesSpec::f21(r(1), r(1), r(-2), q(1, 2))).unwrap_err();
        assert!(matches!(err, Error::UndefinedSeries(_)));
        let err = hyp_eval(&HypSeriesSpec::f21(r(1), r(1), r(2), r(-1))).unwrap_err();
        assert!(matches!(err, Error::Divergent(_)));
        // 3F2 at z = 1 is out of scope
        let err =
            hyp_eval(&HypSeriesSpec::f32(r(1), r(1), r(1), r(3), r(3), r(1))).unwrap_err();
        assert!(matches!(err, Error::Divergent(_)));
    }

    #[test]
    fn termination_shields_lower_pole() {
        // (−2)_ℓ vanishes from ℓ = 3 on; (−3)_ℓ is nonzero up to ℓ = 3.
        let v = hyp_eval(&HypSeriesSpec::f21(r(-2), r(1), r(-3), q(1, 2))).unwrap();
        // 1 + (−2)(1)/(−3)·½ + (−2)(−1)(1)(2)/((−3)(−2)·2)·¼
        assert_eq!(v, Value::Exact(Rational::one() + q(1, 3) + q(1, 12)));
        let err = hyp_eval(&HypSeriesSpec::f21(r(-3), r(1), r(-2), q(1, 2))).unwrap_err();
        assert!(matches!(err, Error::UndefinedSeries(_)));
    }

    #[test]
    fn gauss_examples() {
        let g = gauss_value(&q(3, 2), &r(0), &q(7, 2)).unwrap();
        assert!(g.contains(1.0, 0.0));
        let g = gauss_value(&r(1), &r(1), &r(3)).unwrap();
        assert!(g.contains(2.0, 0.0));
        let g = gauss_value(&q(1, 2), &q(1, 2), &r(2)).unwrap();
        assert!(g.contains(4.0 / std::f64::consts::PI, 0.0), "{g}");
        assert!(gauss_value(&r(1), &r(1), &r(2)).is_err());
    }

    #[test]
    fn series_at_one_matches_closed_forms() {
        // Σ 2/((ℓ+1)(ℓ+2)) = 2
        let v = hyp_eval(&HypSeriesSpec::f21(r(1), r(1), r(3), r(1))).unwrap();
        assert!(v.approx().contains(2.0, 0.0), "{v}");
        assert!(v.approx().error_bound < 1e-12);
        let v = hyp_eval(&HypSeriesSpec::f21(q(1, 2), q(1, 2), r(2), r(1))).unwrap();
        assert!(v.approx().contains(4.0 / std::f64::consts::PI, 0.0), "{v}");
        // c − a pole: Γ(0) in the denominator, the sum vanishes
        let v = hyp_eval(&HypSeriesSpec::f21(r(3), q(-1, 2), r(3), r(1))).unwrap();
        assert!(v.approx().contains(0.0, 0.0));
        let err = hyp_eval(&HypSeriesSpec::f21(r(1), r(1), r(2), r(1))).unwrap_err();
        assert!(matches!(err, Error::Divergent(_)));
    }

    #[test]
    fn pfaff_first_example() {
        let spec = HypSeriesSpec::f21(r(1), r(-1), r(2), q(1, 3));
        let img = pfaff_transform(&spec).unwrap();
        assert_eq!(img.factor, Value::Exact(q(3, 2)));
        assert_eq!(img.spec.upper, vec![r(1), r(3)]);
        assert_eq!(img.spec.lower, vec![r(2)]);
        assert_eq!(img.spec.z, q(-1, 2));
        assert_eq!(hyp_eval(&spec).unwrap(), Value::Exact(q(5, 6)));
        assert!(img.evaluate().unwrap().approx().contains(5.0 / 6.0, 0.0));
    }

    #[test]
    fn pfaff_zero_parameter() {
        let spec = HypSeriesSpec::f21(r(0), q(2, 3), q(5, 4), q(1, 5));
        let img = pfaff_transform(&spec).unwrap();
        assert_eq!(img.factor, Value::Exact(Rational::one()));
        assert_eq!(img.evaluate().unwrap(), Value::Exact(Rational::one()));
    }

    #[test]
    fn pfaff_image_on_the_unit_circle_is_out_of_range() {
        // (1, −2; 3; ½) maps to (1, 5; 3; −1): factor 2, but the image series
        // diverges at z = −1, so only the terminating side is summable.
        let spec = HypSeriesSpec::f21(r(1), r(-2), r(3), q(1, 2));
        assert_eq!(hyp_eval(&spec).unwrap(), Value::Exact(q(17, 24)));
        let img = pfaff_transform(&spec).unwrap();
        assert_eq!(img.factor, Value::Exact(r(2)));
        assert_eq!(img.spec.upper, vec![r(1), r(5)]);
        assert_eq!(img.spec.z, r(-1));
        assert!(matches!(img.evaluate(), Err(Error::Divergent(_))));
    }

    #[test]
    fn pfaff_non_integer_factor() {
        let spec = HypSeriesSpec::f21(q(1, 2), q(1, 3), q(5, 2), q(1, 4));
        let img = pfaff_transform(&spec).unwrap();
        assert!(!img.factor.is_exact());
        let d = hyp_eval(&spec).unwrap() - img.evaluate().unwrap();
        assert!(d.is_zero_within(0.0), "{d}");
        assert!(pfaff_transform(&HypSeriesSpec::f21(r(1), r(1), r(2), r(1))).is_err());
    }

    #[test]
    fn contiguous_2f1_examples() {
        assert_eq!(
            contiguous_2f1_residual(&r(-1), &r(2)).unwrap(),
            Value::Exact(Rational::zero())
        );
        assert_eq!(
            contiguous_2f1_residual(&r(-2), &r(3)).unwrap(),
            Value::Exact(Rational::zero())
        );
        let res = contiguous_2f1_residual(&r(1), &q(3, 2)).unwrap();
        assert!(!res.is_exact());
        assert!(res.is_zero_within(1e-9), "{res}");
        assert!(contiguous_2f1_residual(&r(0), &r(2)).is_err());
        assert!(contiguous_2f1_residual(&r(1), &r(-1)).is_err());
    }

    #[test]
    fn contiguous_3f2_examples() {
        for (n, x) in [(0, q(1, 2)), (0, q(1, 10)), (3, q(1, 2))] {
            let res = contiguous_3f2_residual(n, &x).unwrap();
            assert!(res.is_zero_within(1e-9), "n={n} x={x}: {res}");
        }
        assert!(contiguous_3f2_residual(1, &r(1)).is_err());
    }

    #[test]
    fn binomial_prefix_forms_agree() {
        let top = r(7);
        let x = q(1, 3);
        let direct = crate::double_sum::eval_inner_prefix(&top, 4, &x);
        let exact = binomial_prefix_terminating(&top, 4, &x).unwrap();
        assert_eq!(exact, Value::Exact(direct.clone()));
        let hyp = binomial_prefix_hypergeometric(&top, 4, &x).unwrap();
        assert!((hyp - Value::Exact(direct)).is_zero_within(0.0));
    }
}
