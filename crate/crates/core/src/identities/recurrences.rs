//! Exact checks of the recurrences behind the closed forms.

use std::ops::RangeInclusive;

use crate::approx::Value;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::special::binom;

use super::catalog::{c_of, d_of, d_step};
use super::{IdentityParams, Status, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceKind {
    /// `2C(k) − C(k−1) = 2/(k+1)` with `C(k) = DS(k, k+1, 2k+1)/(k+1)`.
    Ck,
    /// One step of `D(k) = DS(k, 3k+2, 2k+1)/(k+1)`.
    D3n,
    /// Prefix sums of `C(n, i)` after `m` applications of Pascal's rule.
    IterativeUp,
    /// Prefix sums of `1/C(n, i)` after `m` shifts of `n`.
    IterativeRecip,
}

impl RecurrenceKind {
    pub fn id(self) -> &'static str {
        match self {
            RecurrenceKind::Ck => "ck",
            RecurrenceKind::D3n => "d3n",
            RecurrenceKind::IterativeUp => "iterative_up",
            RecurrenceKind::IterativeRecip => "iterative_recip",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        [Self::Ck, Self::D3n, Self::IterativeUp, Self::IterativeRecip]
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown recurrence `{s}`")))
    }
}

/// `k` (or `n`) range, plus the largest shift `m` for the iterative kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceRange {
    pub k: RangeInclusive<u32>,
    pub m_max: u32,
}

fn report(id: &str, params: IdentityParams, lhs: Rational, rhs: Rational) -> VerifyReport {
    let equal = lhs == rhs;
    VerifyReport {
        id: id.to_string(),
        residual: (!equal).then(|| (&lhs - &rhs).abs().to_f64()),
        params,
        lhs: Some(Value::Exact(lhs)),
        rhs: Some(Value::Exact(rhs)),
        status: if equal { Status::ExactEqual } else { Status::Fail },
        bound: None,
        note: None,
    }
}

fn prefix_recip(n: &Rational, k: u32) -> Result<Rational> {
    let mut acc = Rational::zero();
    for i in 0..=k {
        acc += binom(n, i).recip()?;
    }
    Ok(acc)
}

fn prefix_binom(n: &Rational, j: u32) -> Rational {
    crate::double_sum::eval_inner_prefix(n, j, &Rational::one())
}

/// Every report is exact; a mismatch shows up as `FAIL`.
pub fn check_recurrences(kind: RecurrenceKind, range: &RecurrenceRange) -> Result<Vec<VerifyReport>> {
    let id = kind.id();
    let mut out = Vec::new();
    match kind {
        RecurrenceKind::Ck => {
            if *range.k.start() == 0 {
                return Err(Error::domain("ck recurrence needs k >= 1"));
            }
            let mut prev = c_of(range.k.start() - 1)?;
            for k in range.k.clone() {
                let cur = c_of(k)?;
                let lhs = Rational::from(2u32) * &cur - &prev;
                out.push(report(id, IdentityParams::new(k), lhs, Rational::new(2, i64::from(k) + 1)));
                prev = cur;
            }
        }
        RecurrenceKind::D3n => {
            if *range.k.start() == 0 {
                return Err(Error::domain("d3n recurrence needs k >= 1"));
            }
            let mut cur = d_of(*range.k.start())?;
            for k in range.k.clone() {
                let next = d_of(k + 1)?;
                let lhs = &next - Rational::from(2u32) * &cur;
                out.push(report(id, IdentityParams::new(k), lhs, d_step(k)));
                cur = next;
            }
        }
        RecurrenceKind::IterativeUp => {
            // Σ_{i≤j} C(n,i) = 2^m Σ_{i≤j} C(n−m,i) − Σ_{k=1}^{m} 2^{k−1} C(n−k, j)
            for n in range.k.clone() {
                let nr = Rational::from(n);
                for m in 0..=range.m_max {
                    for j in 0..=n {
                        let lhs = prefix_binom(&nr, j);
                        let mut rhs = Rational::pow2(i64::from(m))
                            * prefix_binom(&(&nr - Rational::from(m)), j);
                        for k in 1..=m {
                            rhs -= Rational::pow2(i64::from(k) - 1)
                                * binom(&(&nr - Rational::from(k)), j);
                        }
                        let mut p = IdentityParams::new(n).with_m(m);
                        p.j = Some(j);
                        out.push(report(id, p, lhs, rhs));
                    }
                }
            }
        }
        RecurrenceKind::IterativeRecip => {
            // Σ_{i≤k} 1/C(n,i) = 2^m (n+1)/(n+m+1) Σ_{i≤k} 1/C(n+m,i)
            //                   + Σ_{j=1}^{m} 2^{j−1} (n+1)/(n+j+1) (1/C(n+j,k+1) − 1)
            for n in range.k.clone() {
                let n1 = Rational::from(n + 1);
                for m in 0..=range.m_max {
                    for k in 0..=n {
                        let lhs = prefix_recip(&Rational::from(n), k)?;
                        let mut rhs = Rational::pow2(i64::from(m)) * &n1
                            / Rational::from(n + m + 1)
                            * prefix_recip(&Rational::from(n + m), k)?;
                        for j in 1..=m {
                            let inner = binom(&Rational::from(n + j), k + 1).recip()? - Rational::one();
                            rhs += Rational::pow2(i64::from(j) - 1) * &n1
                                / Rational::from(n + j + 1)
                                * inner;
                        }
                        let mut p = IdentityParams::new(n).with_m(m);
                        p.j = Some(k);
                        out.push(report(id, p, lhs, rhs));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn all_equal(kind: RecurrenceKind, k: RangeInclusive<u32>, m_max: u32) -> usize {
        let reps = check_recurrences(kind, &RecurrenceRange { k, m_max }).unwrap();
        for r in &reps {
            assert_eq!(r.status, Status::ExactEqual, "{r:?}");
        }
        reps.len()
    }

    #[test]
    fn ck_first_step() {
        assert_eq!(c_of(0).unwrap(), q(1, 1));
        assert_eq!(c_of(1).unwrap(), q(1, 1));
        all_equal(RecurrenceKind::Ck, 1..=12, 0);
    }

    #[test]
    fn d3n_small() {
        all_equal(RecurrenceKind::D3n, 1..=8, 0);
    }

    #[test]
    fn iterative_up_example() {
        // n = 5, m = 2, j = 3: 26 = 4·8 − 2·1 − 4
        assert_eq!(prefix_binom(&q(5, 1), 3), q(26, 1));
        assert_eq!(all_equal(RecurrenceKind::IterativeUp, 5..=5, 2), 18);
    }

    #[test]
    fn iterative_recip_example() {
        all_equal(RecurrenceKind::IterativeRecip, 3..=3, 1);
        all_equal(RecurrenceKind::IterativeRecip, 0..=6, 4);
    }

    #[test]
    fn parse_kind() {
        assert_eq!(RecurrenceKind::parse("d3n").unwrap(), RecurrenceKind::D3n);
        assert!(RecurrenceKind::parse("x").is_err());
    }
}
