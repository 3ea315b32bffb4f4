//! Ehrenfest and Mabinogion urns: exact expected hitting times by
//! first-step analysis, and a reproducible Monte-Carlo simulator.
//!
//! Both chains move on the number `w` of white balls among `N`.
//! * Ehrenfest: one uniformly chosen ball changes colour, so `w → w+1` with
//!   probability `(N−w)/N` and `w → w−1` with probability `w/N`.
//! * Mabinogion: the drawn colour recruits one ball of the other colour,
//!   so `w → w+1` with probability `w/N`; states `0` and `N` absorb.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::identities::{verify, IdentityParams, VerifyReport};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UrnKind {
    /// Run until the white count first equals `target`.
    Ehrenfest { target: u32 },
    Mabinogion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UrnChain {
    pub total_balls: u32,
    pub kind: UrnKind,
}

impl UrnChain {
    pub fn ehrenfest(total_balls: u32, target: u32) -> Result<Self> {
        if total_balls == 0 || target > total_balls {
            return Err(Error::domain(format!(
                "Ehrenfest target {target} outside [0, {total_balls}]"
            )));
        }
        Ok(UrnChain {
            total_balls,
            kind: UrnKind::Ehrenfest { target },
        })
    }

    pub fn mabinogion(total_balls: u32) -> Result<Self> {
        if total_balls < 2 {
            return Err(Error::domain("Mabinogion urn needs at least 2 balls"));
        }
        Ok(UrnChain {
            total_balls,
            kind: UrnKind::Mabinogion,
        })
    }

    fn is_stopped(&self, w: u32) -> bool {
        match self.kind {
            UrnKind::Ehrenfest { target } => w == target,
            UrnKind::Mabinogion => w == 0 || w == self.total_balls,
        }
    }

    /// Probability of `w → w+1`; the chain otherwise moves to `w−1`.
    pub fn up_probability(&self, w: u32) -> Rational {
        let n = i64::from(self.total_balls);
        let w = i64::from(w);
        match self.kind {
            UrnKind::Ehrenfest { .. } => Rational::new(n - w, n),
            UrnKind::Mabinogion => Rational::new(w, n),
        }
    }

    /// Exact expected steps to stop, from every state.
    pub fn solve(&self) -> Result<HittingTimeSolution> {
        let states = self.total_balls as usize + 1;
        let mut up = Vec::with_capacity(states);
        let mut stop = Vec::with_capacity(states);
        for w in 0..=self.total_balls {
            up.push(self.up_probability(w));
            stop.push(self.is_stopped(w));
        }
        solve_first_step(&up, &stop).map(|expectations| HittingTimeSolution { expectations })
    }

    fn check_start(&self, start: u32) -> Result<()> {
        if start > self.total_balls {
            return Err(Error::domain(format!(
                "start {start} outside [0, {}]",
                self.total_balls
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingTimeSolution {
    /// Expected steps to stop, indexed by the starting white count.
    pub expectations: Vec<Rational>,
}

impl HittingTimeSolution {
    /// `E(w) − 1 − up·E(w+1) − down·E(w−1)` at every non-stopping state;
    /// zero everywhere for an exact solution.
    pub fn residuals(&self, chain: &UrnChain) -> Vec<Rational> {
        let e = &self.expectations;
        (0..=chain.total_balls)
            .filter(|&w| !chain.is_stopped(w))
            .map(|w| {
                let up = chain.up_probability(w);
                let down = Rational::one() - &up;
                let i = w as usize;
                let mut rhs = Rational::one();
                if i + 1 < e.len() {
                    rhs += &up * &e[i + 1];
                }
                if i > 0 {
                    rhs += &down * &e[i - 1];
                }
                &e[i] - rhs
            })
            .collect()
    }
}

/// Exact Thomas elimination for `E(w) = 1 + up(w)E(w+1) + (1−up(w))E(w−1)`
/// on non-stopping states and `E(w) = 0` on stopping ones.
fn solve_first_step(up: &[Rational], stop: &[bool]) -> Result<Vec<Rational>> {
    let len = up.len();
    // row w: sub·E(w−1) + E(w) + sup·E(w+1) = rhs
    let mut sup_mod: Vec<Rational> = Vec::with_capacity(len);
    let mut rhs_mod: Vec<Rational> = Vec::with_capacity(len);
    for w in 0..len {
        let (sub, sup, rhs) = if stop[w] {
            (Rational::zero(), Rational::zero(), Rational::zero())
        } else {
            let down = Rational::one() - &up[w];
            (-down, -up[w].clone(), Rational::one())
        };
        let (pivot, rhs) = if w == 0 {
            (Rational::one(), rhs)
        } else {
            (
                Rational::one() - &sub * &sup_mod[w - 1],
                rhs - &sub * &rhs_mod[w - 1],
            )
        };
        if pivot.is_zero() {
            return Err(Error::domain(format!(
                "first-step system is singular at state {w}; no stopping state is reachable"
            )));
        }
        sup_mod.push(sup / &pivot);
        rhs_mod.push(rhs / &pivot);
    }
    let mut e = vec![Rational::zero(); len];
    for w in (0..len).rev() {
        e[w] = if w + 1 < len {
            &rhs_mod[w] - &sup_mod[w] * &e[w + 1]
        } else {
            rhs_mod[w].clone()
        };
    }
    Ok(e)
}

/// Expected steps from 0 white balls until `target` are white, with `M+1`
/// balls in total.
pub fn ehrenfest_expected_steps(m: u32, target: u32) -> Result<Rational> {
    if m == 0 || target == 0 || target > m + 1 {
        return Err(Error::domain(format!(
            "Ehrenfest needs M >= 1 and 1 <= target <= M+1 (M={m}, target={target})"
        )));
    }
    let chain = UrnChain::ehrenfest(m + 1, target)?;
    Ok(chain.solve()?.expectations[0].clone())
}

/// Expected absorption time of the Mabinogion urn from `start` white balls.
pub fn mabinogion_expected_exact(total: u32, start: u32) -> Result<Rational> {
    let chain = UrnChain::mabinogion(total)?;
    chain.check_start(start)?;
    Ok(chain.solve()?.expectations[start as usize].clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            trials: 100_000,
            seed: 0,
        }
    }
}

/// Step budget per trajectory; far above any expected time the exact
/// solver can report at sizes where simulation is sensible.
pub const MAX_STEPS_PER_TRIAL: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSummary {
    pub mean: f64,
    pub stderr: f64,
}

/// Trial `t` draws from ChaCha8 stream `t` under key `seed`, so results do
/// not depend on how trials are scheduled.
pub fn simulate(chain: &UrnChain, start: u32, cfg: &SimConfig) -> Result<SimSummary> {
    chain.check_start(start)?;
    if cfg.trials == 0 {
        return Err(Error::domain("trials must be positive"));
    }
    let n = chain.total_balls;
    // Welford accumulation in trial order.
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for t in 0..cfg.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(t);
        let mut w = start;
        let mut steps = 0u64;
        while !chain.is_stopped(w) {
            if steps == MAX_STEPS_PER_TRIAL {
                return Err(Error::domain(format!(
                    "trial {t} exceeded {MAX_STEPS_PER_TRIAL} steps"
                )));
            }
            let white_drawn = rng.gen_range(0..n) < w;
            let up = match chain.kind {
                UrnKind::Ehrenfest { .. } => !white_drawn,
                UrnKind::Mabinogion => white_drawn,
            };
            if up {
                w += 1;
            } else {
                w -= 1;
            }
            steps += 1;
        }
        let x = steps as f64;
        let delta = x - mean;
        mean += delta / (t + 1) as f64;
        m2 += delta * (x - mean);
    }
    let stderr = if cfg.trials > 1 {
        (m2 / (cfg.trials - 1) as f64 / cfg.trials as f64).sqrt()
    } else {
        0.0
    };
    Ok(SimSummary { mean, stderr })
}

/// The `3n+1`-ball absorption-time identity at `n`.
pub fn mabinogion_remark_value(n: u32) -> Result<VerifyReport> {
    verify("mabinogion_3n", &IdentityParams::new(n), 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn ehrenfest_examples() {
        assert_eq!(ehrenfest_expected_steps(1, 1).unwrap(), q(1, 1));
        assert_eq!(ehrenfest_expected_steps(3, 2).unwrap(), q(8, 3));
        assert_eq!(ehrenfest_expected_steps(5, 3).unwrap(), q(23, 5));
        assert!(ehrenfest_expected_steps(3, 0).is_err());
        assert!(ehrenfest_expected_steps(3, 5).is_err());
    }

    #[test]
    fn mabinogion_examples() {
        assert_eq!(mabinogion_expected_exact(2, 1).unwrap(), q(1, 1));
        assert_eq!(mabinogion_expected_exact(4, 2).unwrap(), q(8, 3));
        assert_eq!(mabinogion_expected_exact(7, 0).unwrap(), Rational::zero());
        assert_eq!(mabinogion_expected_exact(7, 7).unwrap(), Rational::zero());
        assert!(mabinogion_expected_exact(1, 0).is_err());
        assert!(mabinogion_expected_exact(4, 5).is_err());
    }

    #[test]
    fn solutions_satisfy_their_systems() {
        for total in 2..15 {
            let chain = UrnChain::mabinogion(total).unwrap();
            let sol = chain.solve().unwrap();
            assert!(sol.residuals(&chain).iter().all(Rational::is_zero));
            for k in 0..=total as usize {
                assert_eq!(sol.expectations[k], sol.expectations[total as usize - k]);
            }
        }
        let chain = UrnChain::ehrenfest(9, 4).unwrap();
        let sol = chain.solve().unwrap();
        assert!(sol.residuals(&chain).iter().all(Rational::is_zero));
        assert!(sol.expectations[4].is_zero());
    }

    #[test]
    fn simulation_is_reproducible() {
        let chain = UrnChain::mabinogion(6).unwrap();
        let cfg = SimConfig { trials: 500, seed: 7 };
        let a = simulate(&chain, 3, &cfg).unwrap();
        let b = simulate(&chain, 3, &cfg).unwrap();
        assert_eq!(a, b);
        let c = simulate(&chain, 3, &SimConfig { trials: 500, seed: 8 }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn simulation_from_absorbing_state() {
        let chain = UrnChain::mabinogion(5).unwrap();
        let s = simulate(&chain, 0, &SimConfig { trials: 1, seed: 0 }).unwrap();
        assert_eq!(s, SimSummary { mean: 0.0, stderr: 0.0 });
    }

    #[test]
    fn remark_value_small_n() {
        let r = mabinogion_remark_value(0).unwrap();
        assert!(r.status.passed());
    }
}
