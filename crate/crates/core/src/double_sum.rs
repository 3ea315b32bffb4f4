//! Direct exact evaluation of
//!
//! ```text
//!   Σ_{j=0}^{n} Σ_{i=0}^{j} C(top, i) / C(bottom, j) · u^i · v^j
//! ```
//!
//! This is the left-hand side every identity in the registry is checked
//! against. The weight `u^i v^j` covers `c^{i−j}` as `(c, 1/c)`, `c^{j−i}` as
//! `(1/c, c)`, `(−1)^i` as `(−1, 1)`, `(−1)^j` as `(1, −1)` and `(−2)^{j−i}`
//! as `(−1/2, −2)`. Global prefactors are applied by the caller.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::special::pochhammer;

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleSumSpec {
    pub n: u32,
    pub top: Rational,
    pub bottom: Rational,
    pub u: Rational,
    pub v: Rational,
}

impl DoubleSumSpec {
    /// Unweighted sum (`u = v = 1`).
    pub fn new(n: u32, top: Rational, bottom: Rational) -> Self {
        DoubleSumSpec {
            n,
            top,
            bottom,
            u: Rational::one(),
            v: Rational::one(),
        }
    }

    pub fn with_weights(mut self, u: Rational, v: Rational) -> Self {
        self.u = u;
        self.v = v;
        self
    }

    /// Weight `c^{i−j}`; `c = 0` cannot be encoded.
    pub fn with_power_weight(self, c: &Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Encoding("c^(i-j) weight needs c != 0".into()));
        }
        let inv = c.recip()?;
        Ok(self.with_weights(c.clone(), inv))
    }

    /// Weight `c^{j−i}`; `c = 0` cannot be encoded.
    pub fn with_reversed_power_weight(self, c: &Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Encoding("c^(j-i) weight needs c != 0".into()));
        }
        let inv = c.recip()?;
        Ok(self.with_weights(inv, c.clone()))
    }

    /// First `j ≤ n` with `C(bottom, j) = 0`, if any. That happens exactly
    /// when `bottom` is an integer in `[0, n−1]`.
    pub fn vanishing_denominator(&self) -> Option<u32> {
        let b = self.bottom.to_i64()?;
        (b >= 0 && b < i64::from(self.n)).then(|| b as u32 + 1)
    }
}

/// Exact value of the double sum.
///
/// With `top = T/t`, `bottom = B/b`, `u = U/p`, `v = V/q` and `D = t·p·q`,
/// the `j`-th summand is `N_j·V^j·b^j / (D^j·Q_j)` where
/// `Q_j = Π_{s<j}(B − s·b)` and `N_j = j·t·p·N_{j−1} + Π_{s<j}(T − s·t)·U^j`.
/// Consecutive denominators divide each other, so the whole sum is carried
/// as one integer over `D^j·Q_j` and reduced once at the end.
pub fn eval_double_sum(spec: &DoubleSumSpec) -> Result<Rational> {
    if let Some(j) = spec.vanishing_denominator() {
        return Err(Error::ZeroDenominator {
            j,
            bottom: spec.bottom.to_string(),
        });
    }
    let (tn, td) = (spec.top.numer(), spec.top.denom());
    let (bn, bd) = (spec.bottom.numer(), spec.bottom.denom());
    let (un, ud) = (spec.u.numer(), spec.u.denom());
    let (vn, vd) = (spec.v.numer(), spec.v.denom());
    let inner_scale = td * ud;
    let d = &inner_scale * vd;
    let v_step = vn * bd;

    let mut top_u = BigInt::one(); // Π(T − s·t)·U^j
    let mut prefix = BigInt::one(); // N_j
    let mut v_pow = BigInt::one(); // V^j·b^j
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 1..=spec.n {
        let prev = BigInt::from(j - 1);
        top_u *= (tn - td * &prev) * un;
        prefix = prefix * (&inner_scale * BigInt::from(j)) + &top_u;
        v_pow *= &v_step;
        let q_factor = bn - bd * &prev;
        if q_factor.is_zero() {
            return Err(Error::ZeroDenominator {
                j,
                bottom: spec.bottom.to_string(),
            });
        }
        let step = &d * q_factor;
        num = num * &step + &prefix * &v_pow;
        den *= step;
    }
    Rational::from_bigints(num, den)
}

/// Inner sum `Σ_{i=0}^{j} C(top, i)·u^i`.
pub fn eval_inner_prefix(top: &Rational, j: u32, u: &Rational) -> Rational {
    let (tn, td) = (top.numer(), top.denom());
    let (un, ud) = (u.numer(), u.denom());
    let scale = td * ud;
    let mut term = BigInt::one();
    let mut acc = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=j {
        term *= (tn - td * BigInt::from(i - 1)) * un;
        let step = &scale * BigInt::from(i);
        acc = acc * &step + &term;
        den *= step;
    }
    Rational::from_bigints(acc, den).expect("positive denominator")
}

/// `Σ_{j=m}^{n} Γ(j+a)/Γ(j+b+1)`, taken relative to `Γ(m+a)/Γ(m+b+1)` so
/// that every term is rational.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaRatioSumSpec {
    pub m: i64,
    pub n: i64,
    pub a: Rational,
    pub b: Rational,
}

/// Both sides of the telescoped Gamma-ratio sum
///
/// ```text
///   Σ_{j=m}^{n} Γ(j+a)/Γ(j+b+1)
///     = Γ(m+a)/((b−a)Γ(m+b)) − Γ(n+a+1)/((b−a)Γ(n+b+1))
/// ```
///
/// divided through by `Γ(m+a)/Γ(m+b+1)`. Returns `(lhs, rhs)`.
pub fn check_gamma_ratio_sum(spec: &GammaRatioSumSpec) -> Result<(Rational, Rational)> {
    if spec.a == spec.b {
        return Err(Error::domain("Gamma-ratio sum needs b != a"));
    }
    if spec.n < spec.m {
        return Err(Error::domain(format!(
            "upper limit {} below lower limit {}",
            spec.n, spec.m
        )));
    }
    let len = u32::try_from(spec.n - spec.m)
        .map_err(|_| Error::domain("summation range too long"))?;
    let base_a = &spec.a + Rational::from(spec.m);
    let base_b = &spec.b + Rational::from(spec.m + 1);

    // lhs term j: (m+a)_{j−m} / (m+b+1)_{j−m}, built incrementally.
    let mut num = Rational::one();
    let mut den = Rational::one();
    let mut lhs = Rational::one();
    for t in 0..len {
        num *= &base_a + Rational::from(t);
        den *= &base_b + Rational::from(t);
        if den.is_zero() {
            return Err(Error::Pole(format!(
                "Γ(j+b+1) hits a pole at j = {}",
                spec.m + i64::from(t) + 1
            )));
        }
        lhs += num.checked_div(&den)?;
    }

    let b_minus_a = &spec.b - &spec.a;
    let head = (&spec.b + Rational::from(spec.m)).checked_div(&b_minus_a)?;
    let tail_den = pochhammer(&base_b, len);
    if tail_den.is_zero() {
        return Err(Error::Pole("Γ(n+b+1) relative to Γ(m+b+1) is singular".into()));
    }
    let tail = pochhammer(&base_a, len + 1)
        .checked_div(&tail_den)?
        .checked_div(&b_minus_a)?;
    Ok((lhs, head - tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ds(n: u32, top: i64, bottom: i64) -> DoubleSumSpec {
        DoubleSumSpec::new(n, q(top, 1), q(bottom, 1))
    }

    #[test]
    fn small_examples() {
        assert_eq!(eval_double_sum(&ds(1, 4, 3)).unwrap(), q(8, 3));
        assert_eq!(eval_double_sum(&ds(1, 3, 2)).unwrap(), q(3, 1));
        let alt = ds(1, 2, 1).with_weights(q(-1, 1), q(1, 1));
        assert_eq!(eval_double_sum(&alt).unwrap(), Rational::zero());
    }

    #[test]
    fn n_zero_is_one() {
        let spec = DoubleSumSpec::new(0, q(-7, 3), q(0, 1)).with_weights(q(5, 2), q(-9, 1));
        assert_eq!(eval_double_sum(&spec).unwrap(), Rational::one());
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let err = eval_double_sum(&ds(3, 5, 1)).unwrap_err();
        assert_eq!(
            err,
            Error::ZeroDenominator {
                j: 2,
                bottom: "1".into()
            }
        );
        // bottom = n is fine: C(n, j) ≠ 0 for j ≤ n
        assert!(eval_double_sum(&ds(3, 5, 3)).is_ok());
        // bottom a negative integer never vanishes
        assert!(eval_double_sum(&ds(3, 5, -2)).is_ok());
    }

    #[test]
    fn power_weight_rejects_zero() {
        let spec = ds(2, 3, 4);
        assert!(matches!(
            spec.clone().with_power_weight(&Rational::zero()),
            Err(Error::Encoding(_))
        ));
        let w = spec.with_power_weight(&q(3, 1)).unwrap();
        assert_eq!((w.u, w.v), (q(3, 1), q(1, 3)));
    }

    #[test]
    fn inner_prefix_examples() {
        let one = Rational::one();
        assert_eq!(eval_inner_prefix(&q(4, 1), 1, &one), q(5, 1));
        assert_eq!(eval_inner_prefix(&q(11, 7), 0, &q(3, 1)), one);
        assert_eq!(eval_inner_prefix(&q(2, 1), 2, &one), q(4, 1));
    }

    #[test]
    fn gamma_ratio_sum_examples() {
        let (l, r) = check_gamma_ratio_sum(&GammaRatioSumSpec {
            m: 0,
            n: 1,
            a: q(1, 1),
            b: q(1, 2),
        })
        .unwrap();
        assert_eq!((l.clone(), r), (q(5, 3), q(5, 3)));

        let (l, r) = check_gamma_ratio_sum(&GammaRatioSumSpec {
            m: 0,
            n: 0,
            a: q(3, 4),
            b: q(-2, 5),
        })
        .unwrap();
        assert_eq!(l, Rational::one());
        assert_eq!(r, Rational::one());
    }

    #[test]
    fn gamma_ratio_sum_rejects_equal_parameters() {
        let spec = GammaRatioSumSpec {
            m: 0,
            n: 3,
            a: q(1, 2),
            b: q(1, 2),
        };
        assert!(matches!(check_gamma_ratio_sum(&spec), Err(Error::Domain(_))));
    }
}
