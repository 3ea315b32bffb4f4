use crate::approx::{ApproxValue, Value};
use crate::double_sum::{eval_double_sum, eval_inner_prefix, DoubleSumSpec};
use crate::error::{Error, Result};
use crate::hypergeom::{hyp_eval, HypSeriesSpec};
use crate::rational::Rational;
use crate::special::{binom, digamma_diff, gamma_ratio, harmonic, pochhammer};

use super::{
    AltForm, Exactness, IdentityParams, IdentityRecord, Lhs, Param, ParamFn, Rhs, SeriesRhs,
};

type P = IdentityParams;

fn r(x: i64) -> Rational {
    Rational::from(x)
}

fn ni(p: &P) -> i64 {
    i64::from(p.n)
}

fn ds(n: u32, top: Rational, bottom: Rational) -> DoubleSumSpec {
    DoubleSumSpec::new(n, top, bottom)
}

fn unit(_: &P) -> Result<Rational> {
    Ok(Rational::one())
}

fn always(_: &P) -> Result<()> {
    Ok(())
}

fn exact(x: Rational) -> Result<Value> {
    Ok(Value::Exact(x))
}

fn ln2() -> Value {
    Value::Approx(ApproxValue::ln2())
}

fn sign(k: i64) -> Rational {
    Rational::sign_power(k)
}

fn half() -> Rational {
    Rational::new(1, 2)
}

/// `Σ_{k=1}^{n} 2^k/k`.
fn two_pow_over_k(n: u32) -> Rational {
    let mut acc = Rational::zero();
    let mut pow = Rational::one();
    for k in 1..=n {
        pow *= Rational::from(2u32);
        acc += &pow / Rational::from(k);
    }
    acc
}

fn central(n: u32) -> Rational {
    binom(&Rational::from(2 * n), n)
}

fn f32_eval(a: [Rational; 3], b: [Rational; 2], z: Rational) -> Result<Value> {
    let [a1, a2, a3] = a;
    let [b1, b2] = b;
    hyp_eval(&HypSeriesSpec::f32(a1, a2, a3, b1, b2, z))
}

// ---- domain predicates ------------------------------------------------------

fn not_negative_integer(x: &Rational, name: &str) -> Result<()> {
    if x.is_negative_integer() {
        return Err(Error::domain(format!("{name} = {x} is a negative integer")));
    }
    Ok(())
}

fn not_integer_in(x: &Rational, lo: i64, hi: i64, name: &str) -> Result<()> {
    if let Some(v) = x.to_i64() {
        if x.is_integer() && lo <= v && v <= hi {
            return Err(Error::domain(format!(
                "{name} = {x} is an integer in [{lo}, {hi}]"
            )));
        }
    }
    Ok(())
}

fn c_admissible(c: &Rational) -> Result<()> {
    if c.is_zero() || *c == r(-1) {
        return Err(Error::domain(format!("c = {c} lies in {{-1, 0}}")));
    }
    Ok(())
}

/// `|c+1| > 1`, so that the series at `1/(c+1)` converge.
fn c_convergent(c: &Rational) -> Result<()> {
    if (c + Rational::one()).abs() <= Rational::one() {
        return Err(Error::domain(format!(
            "c = {c} gives |1/(c+1)| >= 1; the series would need analytic continuation"
        )));
    }
    Ok(())
}

fn thm2_common(p: &P) -> Result<()> {
    c_admissible(p.c()?)?;
    not_negative_integer(p.b()?, "b")
}

fn thm2_generic_domain(p: &P) -> Result<()> {
    thm2_common(p)?;
    let (a, b) = (p.a()?, p.b()?);
    let d = a - b;
    if d.is_nonpositive_integer() {
        return Err(Error::domain(format!(
            "a − b = {d} is a nonpositive integer; use thm2_hyp_degenerate"
        )));
    }
    not_negative_integer(a, "a")?;
    c_convergent(p.c()?)
}

fn thm2_degenerate_domain(p: &P) -> Result<()> {
    thm2_common(p)?;
    let (a, b) = (p.a()?, p.b()?);
    let d = a - b;
    if !d.is_nonpositive_integer() {
        return Err(Error::domain(format!(
            "a − b = {d} is not a nonpositive integer; use thm2_hyp_generic"
        )));
    }
    not_negative_integer(a, "a")?;
    c_convergent(p.c()?)
}

fn n_at_least_one(p: &P) -> Result<()> {
    if p.n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    Ok(())
}

fn m_at_most(p: &P, bound: u32, what: &str) -> Result<()> {
    let m = p.m()?;
    if m > bound {
        return Err(Error::domain(format!("m = {m} exceeds {what} = {bound}")));
    }
    Ok(())
}

// ---- geometric-weight family ---------------------------------------------------

fn thm2_spec(p: &P) -> Result<DoubleSumSpec> {
    let (a, b) = (p.a()?, p.b()?);
    ds(p.n, r(ni(p) + 1) + a, r(ni(p)) + b).with_power_weight(p.c()?)
}

fn thm2_generic_scale(p: &P) -> Result<Rational> {
    let (a, b, c) = (p.a()?, p.b()?, p.c()?);
    let num = (a - b) * (c + Rational::one());
    num.checked_div(&((r(ni(p) + 1) + b) * c))
}

fn thm2_generic_rhs(p: &P) -> Result<Value> {
    let (a, b, c) = (p.a()?, p.b()?, p.c()?);
    let one = Rational::one();
    let d = a - b;
    let z = (c + &one).recip()?;
    let coef = pochhammer(&(a + &one), p.n + 1).checked_div(&pochhammer(&(b + &one), p.n + 1))?;
    let f3 = f32_eval(
        [one.clone(), d.clone(), r(ni(p) + 2) + a],
        [&d + &one, a + &one],
        z.clone(),
    )?;
    let f2 = hyp_eval(&HypSeriesSpec::f21(one.clone(), d.clone(), &d + &one, z))?;
    Ok(f3 * coef - f2)
}

fn degenerate_gap(p: &P) -> Result<u32> {
    let d = p.b()? - p.a()?;
    d.to_i64()
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| Error::domain(format!("b − a = {d} is not a nonnegative integer")))
}

fn thm2_degenerate_scale(p: &P) -> Result<Rational> {
    let (b, c) = (p.b()?, p.c()?);
    let gap = degenerate_gap(p)?;
    let num = (c + Rational::one()).pow(i64::from(gap) + 1)?;
    num.checked_div(&((r(ni(p) + 1) + b) * c))
}

fn thm2_degenerate_rhs(p: &P) -> Result<Value> {
    let (b, c) = (p.b()?, p.c()?);
    let one = Rational::one();
    let gap = degenerate_gap(p)?;
    let cp1 = c + &one;
    let z = cp1.recip()?;
    let nb2 = r(ni(p) + 2) + b;
    let coef = nb2.checked_div(&((b + &one) * &cp1))?;
    let f3 = f32_eval(
        [one.clone(), one.clone(), r(ni(p) + 3) + b],
        [r(2), b + r(2)],
        z,
    )?;
    let psi = digamma_diff(&(b + &one), p.n + 1)?;
    let log = Value::Approx(ApproxValue::ln_rational(&c.checked_div(&cp1)?)?);
    let mut finite = Rational::zero();
    for l in 1..=gap {
        let li = i64::from(l);
        let inner = gamma_ratio(&nb2, -li)? * pochhammer(&(b + &one - r(li)), l) - &one;
        finite += cp1.pow(li)? / Rational::from(l) * inner;
    }
    Ok(f3 * coef + Value::Exact(psi - finite) + log)
}

/// `DS(n, n+a+1, n+b, c, 1/c)` reconstructed from whichever hypergeometric
/// closed form applies: the generic one unless `a − b` is a nonpositive
/// integer.
pub fn thm2_double_sum_via_hypergeometric(p: &IdentityParams) -> Result<Value> {
    let d = p.a()? - p.b()?;
    let (scale, rhs) = if d.is_nonpositive_integer() {
        thm2_degenerate_domain(p)?;
        (thm2_degenerate_scale(p)?, thm2_degenerate_rhs(p)?)
    } else {
        thm2_generic_domain(p)?;
        (thm2_generic_scale(p)?, thm2_generic_rhs(p)?)
    };
    rhs.div(&Value::Exact(scale))
}

// ---- series terms --------------------------------------------------------------

fn thm1_term(p: &P, k: u32) -> Result<Rational> {
    let (a, b) = (p.a()?, p.b()?);
    let ki = i64::from(k);
    let top = r(2 * ki) + a;
    // Σ_{j<k} C(top, j) and C(top, k) in one pass
    let mut c_j = Rational::one();
    let mut below = Rational::zero();
    for j in 0..k {
        below += &c_j;
        c_j = c_j * (&top - Rational::from(j)) / Rational::from(j + 1);
    }
    let inner = c_j + b * below.checked_div(&(r(ki + 1) + b))?;
    let den = r(ki + 1) * binom(&(r(2 * ki + 2) + b), k + 1);
    inner.checked_div(&den)
}

fn thm2_sum_term(p: &P, k: u32) -> Result<Rational> {
    let (a, b, c) = (p.a()?, p.b()?, p.c()?);
    let ki = i64::from(k);
    let inner = eval_inner_prefix(&(r(ki) + a), k, c) * c.pow(-ki)?;
    inner.checked_div(&binom(&(r(ki + 1) + b), k))
}

fn cor3_b0_term(p: &P, k: u32) -> Result<Rational> {
    let ki = i64::from(k);
    let num = binom(&(r(2 * ki) + p.a()?), k);
    num.checked_div(&(r(2 * ki + 1) * central(k)))
}

fn cor3_a1_term(p: &P, k: u32) -> Result<Rational> {
    let b = p.b()?;
    let ki = i64::from(k);
    let num = binom(&r(2 * ki + 1), k) + Rational::pow2(2 * ki) * b / r(ki + 1);
    num.checked_div(&((r(ki + 1) + b) * binom(&(r(2 * ki + 2) + b), k + 1)))
}

fn cor3_a0_term(p: &P, k: u32) -> Result<Rational> {
    let (b, c) = (p.b()?, p.c()?);
    let ki = i64::from(k);
    (c + Rational::one())
        .pow(ki)?
        .checked_div(&binom(&(r(ki + 1) + b), k))
}

fn cor3_a1b0_term(p: &P, k: u32) -> Result<Rational> {
    let ki = i64::from(k);
    let grown = (p.c()? + Rational::one()).pow(ki + 1)? - Rational::one();
    Ok(grown / r(ki + 1))
}

fn odd_reciprocal(_: &P, k: u32) -> Result<Rational> {
    Ok(Rational::new(1, 2 * i64::from(k) + 1))
}

fn two_pow_term(_: &P, k: u32) -> Result<Rational> {
    Ok(Rational::pow2(i64::from(k)) / Rational::from(k))
}

fn three_n_term(_: &P, k: u32) -> Result<Rational> {
    let ki = i64::from(k);
    let ratio = binom(&r(3 * ki + 2), k) / binom(&r(2 * ki + 1), k);
    let inner = Rational::one() - Rational::new(5 * ki + 12, 8 * ki + 12) * ratio;
    Ok(inner / (Rational::pow2(ki) * r(ki)))
}

fn up_to_n(n: u32) -> i64 {
    i64::from(n)
}

fn up_to_n_plus_1(n: u32) -> i64 {
    i64::from(n) + 1
}

fn up_to_n_minus_1(n: u32) -> i64 {
    i64::from(n) - 1
}

fn series(
    first: u32,
    last: fn(u32) -> i64,
    term: fn(&P, u32) -> Result<Rational>,
    finish: fn(&P, Rational) -> Result<Value>,
) -> Rhs {
    Rhs::Series(SeriesRhs {
        first,
        last,
        term,
        finish,
    })
}

// ---- recurrence quantities -------------------------------------------------------

/// `C(k) = DS(k, k+1, 2k+1)/(k+1)`.
pub(super) fn c_of(k: u32) -> Result<Rational> {
    let ki = i64::from(k);
    Ok(eval_double_sum(&ds(k, r(ki + 1), r(2 * ki + 1)))? / r(ki + 1))
}

/// `D(k) = DS(k, 3k+2, 2k+1)/(k+1)`.
pub(super) fn d_of(k: u32) -> Result<Rational> {
    let ki = i64::from(k);
    Ok(eval_double_sum(&ds(k, r(3 * ki + 2), r(2 * ki + 1)))? / r(ki + 1))
}

/// Right-hand side of the one-step recurrence `D(k+1) − 2D(k)`, `k ≥ 1`.
pub(super) fn d_step(k: u32) -> Rational {
    let ki = i64::from(k);
    let ratio = binom(&r(3 * ki + 2), k) / binom(&r(2 * ki + 1), k);
    Rational::new(2, ki) - Rational::new(5 * ki + 12, 2 * ki * (2 * ki + 3)) * ratio
}

// ---- many faces -------------------------------------------------------------------

fn face_alternating(p: &P) -> Result<Value> {
    let n = p.n;
    let top = Rational::from(n + 1);
    let nn = Rational::from(n);
    let mut acc = Rational::zero();
    for k in 0..=n / 2 {
        acc += sign(i64::from(k)) * binom(&top, 2 * k + 1) / binom(&nn, k);
    }
    exact(acc)
}

fn face_weighted(p: &P) -> Result<Value> {
    let n = ni(p);
    let mut acc = Rational::zero();
    let mut c = Rational::one(); // C(n+1+k, k)
    let mut pow = Rational::one();
    for k in 1..=n + 1 {
        c = c * r(n + 1 + k) / r(k);
        pow *= Rational::from(2u32);
        acc += &pow / (r(k) * &c);
    }
    exact(r(n + 1) * acc)
}

fn face_geometric(p: &P) -> Result<Value> {
    exact(r(ni(p) + 1) / Rational::pow2(ni(p) + 1) * two_pow_over_k(p.n + 1))
}

fn face_whole(p: &P) -> Result<Value> {
    let s = eval_double_sum(&ds(p.n, r(ni(p) + 1), r(ni(p))))?;
    exact(s / Rational::pow2(ni(p)))
}

// ---- closed forms used by several records ---------------------------------------

fn cor4_odd_rhs(p: &P) -> Result<Value> {
    let n = p.n;
    exact(r(ni(p) + 1) * (harmonic(2 * n + 1) - harmonic(n) * half()))
}

fn cor4_odd2_rhs(p: &P) -> Result<Value> {
    exact(r(ni(p) + 1) * harmonic(p.n + 1))
}

fn cor4_even2_rhs(p: &P) -> Result<Value> {
    let n = ni(p);
    exact(Rational::pow2(2 * n) / central(p.n) + (r(n) + half()) * harmonic(p.n))
}

fn shift_up_rhs(p: &P) -> Result<Value> {
    let (n, m) = (ni(p), p.m()?);
    let base = binom(&r(2 * n + 2), p.n + 1);
    let mut corr = Rational::zero();
    for k in 1..=i64::from(m) {
        let ratio = binom(&r(2 * n + 2 + k), p.n + 1) / &base - Rational::one();
        corr += ratio / (Rational::pow2(k - 1) * r(k));
    }
    exact(Rational::pow2(i64::from(m)) * r(n + 1) * (harmonic(p.n + 1) - corr))
}

fn shift_down_rhs(p: &P) -> Result<Value> {
    let (n, m) = (ni(p), i64::from(p.m()?));
    let base = binom(&r(2 * n + 2), p.n + 1);
    let mut corr = Rational::zero();
    for k in 1..=m {
        let ratio = binom(&r(2 * n + 2 - k), p.n + 1) / &base - Rational::one();
        corr += Rational::pow2(k + 1) / r(k) * ratio;
    }
    let h = r(2) * harmonic(p.n * 2 + 1) - harmonic(p.n) - corr;
    exact(r(n + 1) / Rational::pow2(m + 1) * h)
}

fn shift_denominator_rhs(p: &P) -> Result<Value> {
    let (n, m) = (ni(p), i64::from(p.m()?));
    let big = Rational::pow2(2 * n + 2);
    let cbase = binom(&r(2 * n + 2), p.n + 1);
    let mut corr = Rational::zero();
    for k in 1..=m {
        let num = &big * r(k) / r(2 * n + 2 - k) - &cbase;
        let den = r(2) * binom(&r(2 * n + 1 - k), p.n + 1);
        let inner = num.checked_div(&den)? + Rational::one();
        corr += inner / (Rational::pow2(k - 1) * r(k));
    }
    let head = harmonic(p.n)
        + Rational::pow2(2 * n + 1) / (r(n + 1) * binom(&r(2 * n + 1), p.n + 1));
    exact(Rational::pow2(m - 1) * r(2 * n + 1 - m) * (head + corr))
}

fn reciprocal_binomial_sum(n: u32) -> Rational {
    let nn = Rational::from(n);
    let mut c = Rational::one();
    let mut acc = Rational::one();
    for j in 1..=n {
        c = c * (&nn - Rational::from(j - 1)) / Rational::from(j);
        acc += c.recip().expect("C(n, j) > 0 for j ≤ n");
    }
    acc
}

fn floor_half_harmonic(p: &P) -> Rational {
    harmonic(p.n.div_ceil(2))
}

fn alt_recip_inner_lhs(p: &P) -> Result<Value> {
    let (a, i) = (p.a()?, p.m()?);
    let mut c = Rational::one();
    let mut acc = Rational::zero();
    for j in 0..=p.n {
        if j > 0 {
            c = c * (a - Rational::from(j - 1)) / Rational::from(j);
        }
        if j >= i {
            acc += sign(i64::from(j)) * c.recip()?;
        }
    }
    exact(acc)
}

fn alt_recip_inner_rhs(p: &P) -> Result<Value> {
    let (a, i) = (p.a()?, p.m()?);
    let a1 = a + Rational::one();
    let tail = sign(ni(p)) * binom(&a1, p.n + 1).recip()?
        + sign(i64::from(i)) * binom(&a1, i).recip()?;
    exact(a1.checked_div(&(a + r(2)))? * tail)
}

// ---- the registry ------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn record(
    id: &'static str,
    title: &'static str,
    formula: &'static str,
    params: &'static [Param],
    domain: &'static str,
    exactness: Exactness,
    check: fn(&P) -> Result<()>,
    lhs: Lhs,
    rhs: Rhs,
) -> IdentityRecord {
    IdentityRecord {
        id,
        title,
        formula,
        params,
        domain,
        exactness,
        check,
        lhs,
        rhs,
        alt_forms: Vec::new(),
    }
}

fn ds_lhs(spec: ParamFn<DoubleSumSpec>, scale: ParamFn<Rational>) -> Lhs {
    Lhs::DoubleSum { spec, scale }
}

const NONE: &[Param] = &[];
const A: &[Param] = &[Param::A];
const B: &[Param] = &[Param::B];
const C: &[Param] = &[Param::C];
const M: &[Param] = &[Param::M];
const AB: &[Param] = &[Param::A, Param::B];
const BC: &[Param] = &[Param::B, Param::C];
const ABC: &[Param] = &[Param::A, Param::B, Param::C];
const AM: &[Param] = &[Param::A, Param::M];

use Exactness::{ExactRational as X, Numeric as N};

pub(super) fn build() -> Vec<IdentityRecord> {
    let mut out = vec![
        record(
            "wansum",
            "odd-top sum with reciprocal odd numbers",
            "DS(n, 2n+2, 2n+1) = (n+1) sum_{k=0}^{n} 1/(2k+1)",
            NONE,
            "n >= 0",
            X,
            always,
            ds_lhs(|p| Ok(ds(p.n, r(2 * ni(p) + 2), r(2 * ni(p) + 1))), unit),
            series(0, up_to_n, odd_reciprocal, |p, s| exact(r(ni(p) + 1) * s)),
        ),
        record(
            "wansum_b",
            "even-bottom companion",
            "DS(n, 2n+1, 2n) = (n+1/2) sum_{k=0}^{n} 1/(2k+1) + 2^{2n-1}/C(2n,n)",
            NONE,
            "n >= 0",
            X,
            always,
            ds_lhs(|p| Ok(ds(p.n, r(2 * ni(p) + 1), r(2 * ni(p)))), unit),
            series(0, up_to_n, odd_reciprocal, |p, s| {
                let n = ni(p);
                exact((r(n) + half()) * s + Rational::pow2(2 * n - 1) / central(p.n))
            }),
        ),
        record(
            "thm1_general",
            "two-parameter sum as a single sum",
            "DS(n, 2n+a+2, 2n+b+1)/(2n+b+2) = sum_{k=0}^{n} [C(2k+a,k) + b/(k+b+1) sum_{j<k} C(2k+a,j)] / ((k+1) C(2k+b+2,k+1))",
            AB,
            "b is not a negative integer",
            X,
            |p| not_negative_integer(p.b()?, "b"),
            ds_lhs(
                |p| Ok(ds(p.n, r(2 * ni(p) + 2) + p.a()?, r(2 * ni(p) + 1) + p.b()?)),
                |p| (r(2 * ni(p) + 2) + p.b()?).recip(),
            ),
            series(0, up_to_n, thm1_term, |_, s| exact(s)),
        ),
        record(
            "thm2_sum_form",
            "geometrically weighted sum as a single sum",
            "DS(n, n+a+1, n+b, c, 1/c)/(n+b+1) = 1/(b+1) sum_{k=0}^{n} sum_{j=0}^{k} C(k+a,j) c^{j-k} / C(k+b+1,k)",
            ABC,
            "c not in {-1, 0}; b is not a negative integer",
            X,
            thm2_common,
            ds_lhs(thm2_spec, |p| (r(ni(p) + 1) + p.b()?).recip()),
            series(0, up_to_n, thm2_sum_term, |p, s| {
                exact(s.checked_div(&(p.b()? + Rational::one()))?)
            }),
        ),
        record(
            "thm2_hyp_generic",
            "geometrically weighted sum via 3F2 and 2F1",
            "(a-b)(c+1)/((n+b+1)c) DS(n, n+a+1, n+b, c, 1/c) = (a+1)_{n+1}/(b+1)_{n+1} 3F2(1, a-b, n+a+2; a-b+1, a+1; 1/(c+1)) - 2F1(1, a-b; a-b+1; 1/(c+1))",
            ABC,
            "c not in {-1, 0}; |c+1| > 1; b, a not negative integers; a-b not a nonpositive integer",
            N,
            thm2_generic_domain,
            ds_lhs(thm2_spec, thm2_generic_scale),
            Rhs::Closed(thm2_generic_rhs),
        ),
        record(
            "thm2_hyp_degenerate",
            "geometrically weighted sum when b - a is a nonnegative integer",
            "(c+1)^{b-a+1}/((n+b+1)c) DS(n, n+a+1, n+b, c, 1/c) = (n+b+2)/((b+1)(c+1)) 3F2(1, 1, n+b+3; 2, b+2; 1/(c+1)) + psi(n+b+2) - psi(b+1) + log(c/(c+1)) - sum_{l=1}^{b-a} (c+1)^l/l [Gamma(n+b+2-l)/Gamma(n+b+2) * Gamma(b+1)/Gamma(b+1-l) - 1]",
            ABC,
            "c not in {-1, 0}; |c+1| > 1; b, a not negative integers; a-b a nonpositive integer",
            N,
            thm2_degenerate_domain,
            ds_lhs(thm2_spec, thm2_degenerate_scale),
            Rhs::Closed(thm2_degenerate_rhs),
        ),
        record(
            "mabinogion_3n",
            "absorption-time sum with 3n+1 balls",
            "2/(3n+1) DS(2n, 3n+1, 3n) = psi(3n+2) - psi(n+1) - log 2 + (3n+2)/(2n+2) 3F2(1, 1, 3n+3; 2, n+2; 1/2)",
            NONE,
            "n >= 0",
            N,
            always,
            ds_lhs(
                |p| Ok(ds(2 * p.n, r(3 * ni(p) + 1), r(3 * ni(p)))),
                |p| Ok(Rational::new(2, 3 * ni(p) + 1)),
            ),
            Rhs::Closed(|p| {
                let psi = digamma_diff(&r(ni(p) + 1), 2 * p.n + 1)?;
                let f3 = f32_eval(
                    [Rational::one(), Rational::one(), r(3 * ni(p) + 3)],
                    [r(2), r(ni(p) + 2)],
                    half(),
                )?;
                let coef = Rational::new(3 * ni(p) + 2, 2 * ni(p) + 2);
                Ok(Value::Exact(psi) - ln2() + f3 * coef)
            }),
        ),
        record(
            "cor3_b0",
            "bottom 2n+1, free top shift",
            "DS(n, 2n+a+2, 2n+1) = sum_{k=0}^{n} (n+1)/(2k+1) C(2k+a,k)/C(2k,k)",
            A,
            "any rational a",
            X,
            always,
            ds_lhs(|p| Ok(ds(p.n, r(2 * ni(p) + 2) + p.a()?, r(2 * ni(p) + 1))), unit),
            series(0, up_to_n, cor3_b0_term, |p, s| exact(r(ni(p) + 1) * s)),
        ),
        record(
            "cor3_a1",
            "top 2n+3, free bottom shift",
            "DS(n, 2n+3, 2n+b+1) = sum_{k=0}^{n} (2n+b+2)/(k+b+1) (C(2k+1,k) + 4^k b/(k+1)) / C(2k+b+2,k+1)",
            B,
            "b is not a negative integer",
            X,
            |p| not_negative_integer(p.b()?, "b"),
            ds_lhs(|p| Ok(ds(p.n, r(2 * ni(p) + 3), r(2 * ni(p) + 1) + p.b()?)), unit),
            series(0, up_to_n, cor3_a1_term, |p, s| {
                exact((r(2 * ni(p) + 2) + p.b()?) * s)
            }),
        ),
        record(
            "cor3_a0",
            "top n+1 with weight c^{j-i}",
            "DS(n, n+1, n+b, 1/c, c) = (n+b+1)/(b+1) sum_{k=0}^{n} (c+1)^k / C(k+b+1,k)",
            BC,
            "c not in {-1, 0}; b is not a negative integer",
            X,
            thm2_common,
            ds_lhs(
                |p| ds(p.n, r(ni(p) + 1), r(ni(p)) + p.b()?).with_reversed_power_weight(p.c()?),
                unit,
            ),
            series(0, up_to_n, cor3_a0_term, |p, s| {
                let b = p.b()?;
                exact((r(ni(p) + 1) + b).checked_div(&(b + Rational::one()))? * s)
            }),
        ),
        record(
            "cor3_a1b0",
            "top n+2, bottom n, weight c^{j-i}",
            "c DS(n, n+2, n, 1/c, c) = sum_{k=0}^{n} (n+1)/(k+1) ((c+1)^{k+1} - 1)",
            C,
            "c not in {-1, 0}",
            X,
            |p| c_admissible(p.c()?),
            ds_lhs(
                |p| ds(p.n, r(ni(p) + 2), r(ni(p))).with_reversed_power_weight(p.c()?),
                |p| Ok(p.c()?.clone()),
            ),
            series(0, up_to_n, cor3_a1b0_term, |p, s| exact(r(ni(p) + 1) * s)),
        ),
        record(
            "cor4_odd",
            "harmonic form, top 2n+2",
            "DS(n, 2n+2, 2n+1) = (n+1)(H_{2n+1} - H_n/2)",
            NONE,
            "n >= 0",
            X,
            always,
            ds_lhs(|p| Ok(ds(p.n, r(2 * ni(p) + 2), r(2 * ni(p) + 1))), unit),
            Rhs::Closed(cor4_odd_rhs),
        ),
        record(
            "cor4_odd2",
            "harmonic form, top 2n+3",
            "DS(n, 2n+3, 2n+1) = (n+1) H_{n+1}",
            NONE,
            "n >= 0",
            X,
            always,
            ds_lhs(|p| Ok(ds(p.n, r(2 * ni(p) + 3), r(2 * ni(p) + 1))), unit),
            Rhs::Closed(cor4_odd2_rhs),
        ),
        record(
            "cor4_even",
            "harmonic form, bottom 2n, top 2n+1",
            "DS(n, 2n+1, 2n) = 2^{2n-1}/C(2n,n) + (n+1/2)(H_{2n+1} - H_n/2)",
            NONE,
            "n >= 0",
            X,
            always,
            ds_lhs(|p| Ok(ds(p.n, r(2 * ni(p) + 1), r(2 * ni(p)))), unit),
            Rhs::Closed(|p| {
                let n = ni(p);
                let h = harmonic(2 * p.n + 1) - harmonic(p.n) * half();
                exact(Rational::pow2(2 * n - 1) / central(p.n) + (r(n) + half()) * h)
            }),
        ),
        record(
            "cor4_even2",
            "harmonic form, bottom 2n, top 2n+2",
            "DS(n, 2n+2, 2n) = 2^{2n}/C(2n,n) + (n+1/2) H_n",
            NONE,
            "n >= 0",
            X,
            always,
            ds_lhs(|p| Ok(ds(p.n, r(2 * ni(p) + 2), r(2 * ni(p)))), unit),
            Rhs::Closed(cor4_even2_rhs),
        ),
        record(
            "h2log2_remark",
            "3F2 at 1/2 via harmonic numbers",
            "(2n+1)/(n+1) 3F2(1, 1, 2n+2; 2, n+2; 1/2) = H_n + 2 log 2",
            NONE,
            "n >= 0",
            N,
            always,
            Lhs::Direct(|p| {
                let f3 = f32_eval(
                    [Rational::one(), Rational::one(), r(2 * ni(p) + 2)],
                    [r(2), r(ni(p) + 2)],
                    half(),
                )?;
                Ok(f3 * Rational::new(2 * ni(p) + 1, ni(p) + 1))
            }),
            Rhs::Closed(|p| Ok(Value::Exact(harmonic(p.n)) + ln2() * r(2))),
        ),
        record(
            "rem_fast",
            "fast-converging form of sum 2^k/k",
            "sum_{k=1}^{n+1} 2^k/k = (n+2)/2 3F2(1, 1, n+3; 2, 2; 1/2) + H_{n+1} - log 2",
            NONE,
            "n >= 0",
            N,
            always,
            Lhs::Direct(|p| exact(two_pow_over_k(p.n + 1))),
            Rhs::Closed(|p| {
                let f3 = f32_eval(
                    [Rational::one(), Rational::one(), r(ni(p) + 3)],
                    [r(2), r(2)],
                    half(),
                )?;
                Ok(f3 * Rational::new(ni(p) + 2, 2) + Value::Exact(harmonic(p.n + 1)) - ln2())
            }),
        ),
        record(
            "shift_up",
            "top raised by m",
            "DS(n, 2n+3+m, 2n+1) = 2^m (n+1) (H_{n+1} - sum_{k=1}^{m} (C(2n+2+k,n+1)/C(2n+2,n+1) - 1)/(2^{k-1} k))",
            M,
            "m >= 0",
            X,
            always,
            ds_lhs(
                |p| Ok(ds(p.n, r(2 * ni(p) + 3 + i64::from(p.m()?)), r(2 * ni(p) + 1))),
                unit,
            ),
            Rhs::Closed(shift_up_rhs),
        ),
        record(
            "shift_down",
            "top lowered by m",
            "DS(n, 2n+2-m, 2n+1) = (n+1)/2^{m+1} (2 H_{2n+1} - H_n - sum_{k=1}^{m} 2^{k+1}/k (C(2n+2-k,n+1)/C(2n+2,n+1) - 1))",
            M,
            "m >= 0",
            X,
            always,
            ds_lhs(
                |p| Ok(ds(p.n, r(2 * ni(p) + 2 - i64::from(p.m()?)), r(2 * ni(p) + 1))),
                unit,
            ),
            Rhs::Closed(shift_down_rhs),
        ),
        record(
            "shift_denominator",
            "bottom lowered by m",
            "DS(n, 2n+2, 2n-m) = 2^{m-1} (2n+1-m) (H_n + 2^{2n+1}/((n+1) C(2n+1,n+1)) + sum_{k=1}^{m} [(2^{2n+2} k/(2n+2-k) - C(2n+2,n+1))/(2 C(2n+1-k,n+1)) + 1]/(2^{k-1} k))",
            M,
            "0 <= m <= n",
            X,
            |p| m_at_most(p, p.n, "n"),
            ds_lhs(
                |p| Ok(ds(p.n, r(2 * ni(p) + 2), r(2 * ni(p) - i64::from(p.m()?)))),
                unit,
            ),
            Rhs::Closed(shift_denominator_rhs),
        ),
        record(
            "recip_single",
            "sum of reciprocal binomials",
            "sum_{j=0}^{n} 1/C(n,j) = DS(n, 0, n) = (n+1)/2^{n+1} sum_{k=1}^{n+1} 2^k/k",
            NONE,
            "n >= 0",
            X,
            always,
            ds_lhs(|p| Ok(ds(p.n, Rational::zero(), r(ni(p)))), unit),
            series(1, up_to_n_plus_1, two_pow_term, |p, s| {
                exact(r(ni(p) + 1) / Rational::pow2(ni(p) + 1) * s)
            }),
        ),
        record(
            "symmetry_lemma",
            "symmetric weights, f(j) = 1/C(n,j)",
            "DS(n, n+1, n) = 2^n sum_{j=0}^{n} 1/C(n,j)",
            NONE,
            "n >= 0",
            X,
            always,
            ds_lhs(|p| Ok(ds(p.n, r(ni(p) + 1), r(ni(p)))), unit),
            Rhs::Closed(|p| exact(Rational::pow2(ni(p)) * reciprocal_binomial_sum(p.n))),
        ),
        record(
            "recip_shift",
            "top n+1-m over bottom n",
            "DS(n, n+1-m, n) = (n+1)/2^{m+1} (sum_{k=1}^{n+1} 2^k/k + sum_{l=1}^{m} 2^l/l)",
            M,
            "0 <= m <= n+1",
            X,
            |p| m_at_most(p, p.n + 1, "n+1"),
            ds_lhs(
                |p| Ok(ds(p.n, r(ni(p) + 1 - i64::from(p.m()?)), r(ni(p)))),
                unit,
            ),
            series(1, up_to_n_plus_1, two_pow_term, |p, s| {
                let m = p.m()?;
                exact(r(ni(p) + 1) / Rational::pow2(i64::from(m) + 1) * (s + two_pow_over_k(m)))
            }),
        ),
        record(
            "recip_whole",
            "top n+1 over bottom n",
            "DS(n, n+1, n) = (n+1)/2 sum_{k=1}^{n+1} 2^k/k",
            NONE,
            "n >= 0",
            X,
            always,
            ds_lhs(|p| Ok(ds(p.n, r(ni(p) + 1), r(ni(p)))), unit),
            series(1, up_to_n_plus_1, two_pow_term, |p, s| {
                exact(r(ni(p) + 1) / r(2) * s)
            }),
        ),
        record(
            "many_faces",
            "four expressions for the top n+1, bottom 2n+1 sum",
            "DS(n, n+1, 2n+1) = sum_{k<=n/2} (-1)^k C(n+1,2k+1)/C(n,k) = (n+1) sum_{k=1}^{n+1} 2^k/(k C(n+1+k,k)) = (n+1)/2^{n+1} sum_{k=1}^{n+1} 2^k/k = DS(n, n+1, n)/2^n",
            NONE,
            "n >= 0",
            X,
            always,
            ds_lhs(|p| Ok(ds(p.n, r(ni(p) + 1), r(2 * ni(p) + 1))), unit),
            Rhs::Closed(face_geometric),
        ),
        record(
            "ck_recurrence",
            "telescoping recurrence for C(n) = DS(n, n+1, 2n+1)/(n+1)",
            "2 C(n) - C(n-1) = 2/(n+1)",
            NONE,
            "n >= 1",
            X,
            n_at_least_one,
            Lhs::Direct(|p| exact(r(2) * c_of(p.n)? - c_of(p.n - 1)?)),
            Rhs::Closed(|p| exact(Rational::new(2, ni(p) + 1))),
        ),
        record(
            "three_n",
            "solved recurrence for D(n) = DS(n, 3n+2, 2n+1)/(n+1)",
            "D(n) = 2^n (3/4 + sum_{k=1}^{n-1} (1 - (5k+12)/(8k+12) C(3k+2,k)/C(2k+1,k)) / (2^k k))",
            NONE,
            "n >= 1",
            X,
            n_at_least_one,
            ds_lhs(
                |p| Ok(ds(p.n, r(3 * ni(p) + 2), r(2 * ni(p) + 1))),
                |p| Ok(Rational::new(1, ni(p) + 1)),
            ),
            series(1, up_to_n_minus_1, three_n_term, |p, s| {
                exact(Rational::pow2(ni(p)) * (Rational::new(3, 4) + s))
            }),
        ),
        record(
            "alt_inner",
            "alternating binomial prefix (n is the prefix length, a the top)",
            "sum_{i=0}^{n} (-1)^i C(a,i) = (-1)^n C(a-1,n)",
            A,
            "any rational a",
            X,
            always,
            Lhs::Direct(|p| exact(eval_inner_prefix(p.a()?, p.n, &r(-1)))),
            Rhs::Closed(|p| exact(sign(ni(p)) * binom(&(p.a()? - Rational::one()), p.n))),
        ),
        record(
            "alt_recip_inner",
            "alternating reciprocal binomial sum from m to n",
            "sum_{j=m}^{n} (-1)^j / C(a,j) = (a+1)/(a+2) ((-1)^n / C(a+1,n+1) + (-1)^m / C(a+1,m))",
            AM,
            "m <= n; a is not an integer in [-2, n]",
            X,
            |p| {
                m_at_most(p, p.n, "n")?;
                not_integer_in(p.a()?, -2, ni(p), "a")
            },
            Lhs::Direct(alt_recip_inner_lhs),
            Rhs::Closed(alt_recip_inner_rhs),
        ),
        record(
            "alt_plain",
            "weight (-1)^i with bottom n+a",
            "DS(n, n+a+1, n+a, -1, 1) = ((-1)^n + 1)/2",
            A,
            "a is not an integer in [-n, -1]",
            X,
            |p| not_integer_in(p.a()?, -ni(p), -1, "a"),
            ds_lhs(
                |p| {
                    let a = p.a()?;
                    Ok(ds(p.n, r(ni(p) + 1) + a, r(ni(p)) + a).with_weights(r(-1), r(1)))
                },
                unit,
            ),
            Rhs::Closed(|p| exact((sign(ni(p)) + Rational::one()) * half())),
        ),
        record(
            "alt_shift_n",
            "weight (-1)^{n-i}, top n+2",
            "(-1)^n DS(n, n+2, n, -1, 1) = (n+1)(H_{n+1} - H_{floor((n+1)/2)})",
            NONE,
            "n >= 0",
            X,
            always,
            ds_lhs(
                |p| Ok(ds(p.n, r(ni(p) + 2), r(ni(p))).with_weights(r(-1), r(1))),
                |p| Ok(sign(ni(p))),
            ),
            Rhs::Closed(|p| exact(r(ni(p) + 1) * (harmonic(p.n + 1) - floor_half_harmonic(p)))),
        ),
        record(
            "alt_c2",
            "weight (-2)^{j-i}, top n+2",
            "DS(n, n+2, n, -1/2, -2) = (n+1)(H_{n+1} - H_{floor((n+1)/2)}/2)",
            NONE,
            "n >= 0",
            X,
            always,
            ds_lhs(
                |p| Ok(ds(p.n, r(ni(p) + 2), r(ni(p))).with_weights(Rational::new(-1, 2), r(-2))),
                unit,
            ),
            Rhs::Closed(|p| {
                exact(r(ni(p) + 1) * (harmonic(p.n + 1) - floor_half_harmonic(p) * half()))
            }),
        ),
        record(
            "alt_general",
            "weight (-1)^{i+j}, general shifts",
            "DS(n, n+a+1, n+b, -1, -1) = ((a)_{n+1}/(b+1)_n - n - b - 1)/(a - b - 1)",
            AB,
            "a != b+1; b is not an integer in [-n, -1]",
            X,
            |p| {
                let (a, b) = (p.a()?, p.b()?);
                if *a == b + Rational::one() {
                    return Err(Error::domain("a = b+1; use alt_abp1"));
                }
                not_integer_in(b, -ni(p), -1, "b")
            },
            ds_lhs(
                |p| {
                    let (a, b) = (p.a()?, p.b()?);
                    Ok(ds(p.n, r(ni(p) + 1) + a, r(ni(p)) + b).with_weights(r(-1), r(-1)))
                },
                unit,
            ),
            Rhs::Closed(|p| {
                let (a, b) = (p.a()?, p.b()?);
                let one = Rational::one();
                let ratio = pochhammer(a, p.n + 1).checked_div(&pochhammer(&(b + &one), p.n))?;
                exact((ratio - r(ni(p) + 1) - b).checked_div(&(a - b - one))?)
            }),
        ),
        record(
            "alt_ab",
            "weight (-1)^{i+j}, top one above bottom",
            "DS(n, n+a+1, n+a, -1, -1) = n+1",
            A,
            "a is not an integer in [-n, -1]",
            X,
            |p| not_integer_in(p.a()?, -ni(p), -1, "a"),
            ds_lhs(
                |p| {
                    let a = p.a()?;
                    Ok(ds(p.n, r(ni(p) + 1) + a, r(ni(p)) + a).with_weights(r(-1), r(-1)))
                },
                unit,
            ),
            Rhs::Closed(|p| exact(r(ni(p) + 1))),
        ),
        record(
            "alt_abp1",
            "weight (-1)^{i+j}, top two above bottom",
            "DS(n, n+b+2, n+b, -1, -1) = (n+b+1)(psi(n+b+2) - psi(b+1))",
            B,
            "b is not an integer in [-n-1, -1]",
            X,
            |p| not_integer_in(p.b()?, -ni(p) - 1, -1, "b"),
            ds_lhs(
                |p| {
                    let b = p.b()?;
                    Ok(ds(p.n, r(ni(p) + 2) + b, r(ni(p)) + b).with_weights(r(-1), r(-1)))
                },
                unit,
            ),
            Rhs::Closed(|p| {
                let b = p.b()?;
                exact((r(ni(p) + 1) + b) * digamma_diff(&(b + Rational::one()), p.n + 1)?)
            }),
        ),
        record(
            "alt_whole",
            "weight (-1)^j, top n+1 over bottom n",
            "DS(n, n+1, n, 1, -1) = (n+1)/(2n+4) (1 + (-1)^n (2^{n+2} - 1))",
            NONE,
            "n >= 0",
            X,
            always,
            ds_lhs(
                |p| Ok(ds(p.n, r(ni(p) + 1), r(ni(p))).with_weights(r(1), r(-1))),
                unit,
            ),
            Rhs::Closed(|p| {
                let n = ni(p);
                let inner = Rational::one() + sign(n) * (Rational::pow2(n + 2) - Rational::one());
                exact(Rational::new(n + 1, 2 * n + 4) * inner)
            }),
        ),
        record(
            "alt_even",
            "weight (-1)^j, top 2n+1 over bottom 2n",
            "DS(n, 2n+1, 2n, 1, -1) = (-1)^n 2^{2n-1}/C(2n,n) + (2n+1)/(n+1) ((-1)^n + 1)/4",
            NONE,
            "n >= 0",
            X,
            always,
            ds_lhs(
                |p| Ok(ds(p.n, r(2 * ni(p) + 1), r(2 * ni(p))).with_weights(r(1), r(-1))),
                unit,
            ),
            Rhs::Closed(|p| {
                let n = ni(p);
                let head = sign(n) * Rational::pow2(2 * n - 1) / central(p.n);
                let tail = Rational::new(2 * n + 1, n + 1) * (sign(n) + Rational::one())
                    / r(4);
                exact(head + tail)
            }),
        ),
    ];

    let faces = out
        .iter_mut()
        .find(|r| r.id == "many_faces")
        .expect("many_faces registered");
    faces.alt_forms = vec![
        AltForm {
            name: "alternating",
            eval: face_alternating,
        },
        AltForm {
            name: "weighted",
            eval: face_weighted,
        },
        AltForm {
            name: "whole",
            eval: face_whole,
        },
    ];
    out
}
