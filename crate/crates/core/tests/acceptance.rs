//! Acceptance criteria, one test each. Run with
//! `cargo test -p binratio --release --test acceptance -- --nocapture`
//! to see the PASS/FAIL lines.

use std::time::{Duration, Instant};

use binratio::double_sum::{eval_double_sum, eval_inner_prefix, DoubleSumSpec};
use binratio::hypergeom::{
    binomial_prefix_hypergeometric, binomial_prefix_terminating, contiguous_2f1_residual,
    contiguous_3f2_residual, gauss_value, hyp_eval, pfaff_transform, HypSeriesSpec,
};
use binratio::identities::{
    check_recurrences, registry, sweep, verify, Exactness, IdentityParams, ParamGrid,
    RecurrenceKind, RecurrenceRange, Status, VerifyReport,
};
use binratio::rational::q;
use binratio::special::harmonic;
use binratio::urn::{
    ehrenfest_expected_steps, mabinogion_expected_exact, simulate, SimConfig, UrnChain,
};
use binratio::{Rational, Value};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn verdict(criterion: u32, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("{tag} criterion {criterion}: {detail}");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn failures(reps: &[VerifyReport], accept: &[Status]) -> Vec<String> {
    reps.iter()
        .filter(|r| !accept.contains(&r.status))
        .map(|r| format!("{} [{}] {:?} {:?}", r.id, r.params, r.status, r.note))
        .collect()
}

#[test]
fn criterion_1_exact_identity_suite() {
    let start = Instant::now();
    let grid = ParamGrid::default();
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut bad = Vec::new();
    let mut ids = Vec::new();
    for rec in registry().iter().filter(|r| r.exactness == Exactness::ExactRational) {
        let reps = sweep(rec.id, 0..=100, &grid, 0.0).unwrap();
        checked += reps.iter().filter(|r| r.status == Status::ExactEqual).count();
        skipped += reps.iter().filter(|r| r.status == Status::Skipped).count();
        if !reps.iter().any(|r| r.status == Status::ExactEqual) {
            bad.push(format!("{}: no admissible point", rec.id));
        }
        bad.extend(failures(&reps, &[Status::ExactEqual, Status::Skipped]));
        ids.push(rec.id);
    }
    let elapsed = start.elapsed();
    for b in bad.iter().take(10) {
        println!("  {b}");
    }
    verdict(
        1,
        bad.is_empty() && elapsed < Duration::from_secs(120),
        &format!(
            "{} exact identities, {checked} exact-equal, {skipped} skipped, {} failures, n in [0, 100], {:.1}s",
            ids.len(),
            bad.len(),
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_2_spot_values() {
    let w = verify("wansum", &IdentityParams::new(1), 0.0).unwrap();
    let wb = verify("wansum_b", &IdentityParams::new(1), 0.0).unwrap();
    let c4 = verify("cor4_odd", &IdentityParams::new(2), 0.0).unwrap();
    let both = |r: &VerifyReport, v: Rational| {
        r.status == Status::ExactEqual
            && r.lhs == Some(Value::Exact(v.clone()))
            && r.rhs == Some(Value::Exact(v))
    };
    verdict(
        2,
        both(&w, q(8, 3)) && both(&wb, q(3, 1)) && both(&c4, q(23, 5)),
        "odd-top sum n=1 -> 8/3, even-bottom sum n=1 -> 3, harmonic form n=2 -> 23/5",
    );
}

#[test]
fn criterion_3_numeric_identity_suite() {
    let start = Instant::now();
    let grid = ParamGrid::default();
    let ids = [
        "thm2_hyp_generic",
        "thm2_hyp_degenerate",
        "h2log2_remark",
        "rem_fast",
        "mabinogion_3n",
    ];
    let mut bad = Vec::new();
    let mut within = 0usize;
    let mut worst: f64 = 0.0;
    for id in ids {
        let reps = sweep(id, 0..=30, &grid, 1e-9).unwrap();
        within += reps.iter().filter(|r| r.status.passed()).count();
        if !reps.iter().any(|r| r.status.passed()) {
            bad.push(format!("{id}: no admissible point"));
        }
        for r in &reps {
            if let (Some(res), Some(bound)) = (r.residual, r.bound) {
                worst = worst.max(res / bound);
            }
        }
        bad.extend(failures(
            &reps,
            &[Status::WithinBounds, Status::ExactEqual, Status::Skipped],
        ));
    }
    let elapsed = start.elapsed();
    for b in bad.iter().take(10) {
        println!("  {b}");
    }
    verdict(
        3,
        bad.is_empty() && elapsed < Duration::from_secs(60),
        &format!(
            "{within} numeric checks within bounds + 1e-9, worst residual/threshold {worst:.3}, {:.1}s",
            elapsed.as_secs_f64()
        ),
    );
}

fn small_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    let d = rng.gen_range(1..=8);
    q(rng.gen_range(lo * d..=hi * d), d)
}

fn close(a: &Value, b: &Value, tol: f64) -> bool {
    (a.clone() - b.clone()).is_zero_within(tol)
}

#[test]
fn criterion_4_hypergeometric_machinery() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = Vec::new();

    // binomial prefix through its terminating and Pfaff-transformed 2F1 forms
    let xs = [q(1, 1), q(2, 1), q(1, 3)];
    let mut bridge = 0;
    for top in 1..=30i64 {
        for x in &xs {
            let k = rng.gen_range(0..=top as u32);
            let direct = Value::Exact(eval_inner_prefix(&q(top, 1), k, x));
            let term = binomial_prefix_terminating(&q(top, 1), k, x).unwrap();
            let pfaff = binomial_prefix_hypergeometric(&q(top, 1), k, x).unwrap();
            if term != direct || !close(&pfaff, &direct, 1e-9) {
                bad.push(format!("bridge top={top} k={k} x={x}: {pfaff} vs {direct}"));
            }
            bridge += 1;
        }
    }

    // Pfaff invariance; at z = 1/2 the image argument is −1, outside the
    // series domain unless the image terminates
    let mut pfaff = 0;
    let mut boundary = 0;
    while pfaff < 50 {
        let a = q(rng.gen_range(-5..=5), 1);
        let b = small_rational(&mut rng, -3, 3);
        let c = small_rational(&mut rng, -3, 4);
        let z = q(rng.gen_range(-50..=50), 100);
        if c.is_nonpositive_integer() {
            continue;
        }
        let spec = HypSeriesSpec::f21(a.clone(), b.clone(), c.clone(), z.clone());
        let lhs = hyp_eval(&spec).unwrap();
        let image = pfaff_transform(&spec).unwrap();
        if image.spec.z == q(-1, 1) && image.spec.terminating_degree().is_none() {
            if image.evaluate().is_ok() {
                bad.push(format!("pfaff ({a},{b};{c};{z}): image on |z| = 1 was summed"));
            }
            boundary += 1;
            continue;
        }
        let rhs = image.evaluate().unwrap();
        if !close(&lhs, &rhs, 1e-9) {
            bad.push(format!("pfaff ({a},{b};{c};{z}): {lhs} vs {rhs}"));
        }
        pfaff += 1;
    }

    // Gauss summation against direct summation at z = 1
    let mut gauss = 0;
    while gauss < 50 {
        let a = small_rational(&mut rng, -3, 3);
        let b = small_rational(&mut rng, -3, 3);
        let c = small_rational(&mut rng, 0, 6);
        let s = &c - &a - &b;
        if !(s.is_positive() && c.is_positive() && (&c - &a).is_positive() && (&c - &b).is_positive()) {
            continue;
        }
        let summed = hyp_eval(&HypSeriesSpec::f21(a.clone(), b.clone(), c.clone(), Rational::one())).unwrap();
        let closed = Value::Approx(gauss_value(&a, &b, &c).unwrap());
        if !close(&summed, &closed, 1e-9) {
            bad.push(format!("gauss ({a},{b};{c}): {summed} vs {closed}"));
        }
        gauss += 1;
    }

    // contiguous relations
    let mut ctg2 = 0;
    while ctg2 < 50 {
        let beta = small_rational(&mut rng, -4, 4);
        let gamma = small_rational(&mut rng, -3, 5);
        if beta.is_zero() || gamma.is_nonpositive_integer() {
            continue;
        }
        match contiguous_2f1_residual(&beta, &gamma) {
            Ok(r) if r.is_zero_within(1e-9) => {}
            other => bad.push(format!("2F1 contiguous beta={beta} gamma={gamma}: {other:?}")),
        }
        ctg2 += 1;
    }
    for i in 0..50 {
        let n = rng.gen_range(0..=20);
        let x = q(rng.gen_range(-90..=90), 100);
        match contiguous_3f2_residual(n, &x) {
            Ok(r) if r.is_zero_within(1e-9) => {}
            other => bad.push(format!("3F2 contiguous #{i} n={n} x={x}: {other:?}")),
        }
    }

    for b in bad.iter().take(10) {
        println!("  {b}");
    }
    verdict(
        4,
        bad.is_empty(),
        &format!(
            "{bridge} bridge, {pfaff} Pfaff ({boundary} boundary images rejected), {gauss} Gauss, {ctg2} + 50 contiguous cases at 1e-9"
        ),
    );
}

#[test]
fn criterion_5_ehrenfest_oracle() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    for m in 1..=60u32 {
        for t in 1..=m {
            let chain = ehrenfest_expected_steps(m, t).unwrap();
            let spec = DoubleSumSpec::new(t - 1, Rational::from(m + 1), Rational::from(m));
            let sum = eval_double_sum(&spec).unwrap();
            if chain != sum {
                bad.push(format!("M={m} t={t}: {chain} vs {sum}"));
            }
            count += 1;
        }
    }
    for n in 0..=25u32 {
        let steps = ehrenfest_expected_steps(2 * n + 1, n + 1).unwrap();
        let closed = Rational::from(n + 1) * (harmonic(2 * n + 1) - harmonic(n) / Rational::from(2u32));
        if steps != closed {
            bad.push(format!("balanced n={n}: {steps} vs {closed}"));
        }
    }
    let elapsed = start.elapsed();
    verdict(
        5,
        bad.is_empty() && elapsed < Duration::from_secs(60),
        &format!(
            "{count} chain/double-sum comparisons and 26 balanced-state closed forms, {:.1}s",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_6_monte_carlo() {
    let start = Instant::now();
    let cfg = SimConfig {
        trials: 100_000,
        seed: 0,
    };
    let mut lines = Vec::new();
    let mut ok = true;
    let mut check = |label: String, chain: UrnChain, s: u32, exact: Rational| {
        let sim = simulate(&chain, s, &cfg).unwrap();
        let z = (sim.mean - exact.to_f64()).abs() / sim.stderr;
        ok &= z <= 4.0;
        lines.push(format!("{label}: mean {:.4} vs {exact} ({z:.2} se)", sim.mean));
    };
    for total in [4u32, 10, 20] {
        let s = total / 2;
        let exact = mabinogion_expected_exact(total, s).unwrap();
        check(format!("mabinogion {total}"), UrnChain::mabinogion(total).unwrap(), s, exact);
    }
    let exact = ehrenfest_expected_steps(3, 2).unwrap();
    check("ehrenfest M=3 t=2".into(), UrnChain::ehrenfest(4, 2).unwrap(), 0, exact);
    let elapsed = start.elapsed();
    verdict(
        6,
        ok && elapsed < Duration::from_secs(30),
        &format!("{}; {:.1}s", lines.join("; "), elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_7_recurrences() {
    let run = |kind, k, m_max| {
        check_recurrences(kind, &RecurrenceRange { k, m_max }).unwrap()
    };
    let ck = run(RecurrenceKind::Ck, 1..=50, 0);
    let d3n = run(RecurrenceKind::D3n, 1..=30, 0);
    let up = run(RecurrenceKind::IterativeUp, 0..=40, 10);
    let recip = run(RecurrenceKind::IterativeRecip, 0..=40, 10);
    let all: Vec<_> = [&ck, &d3n, &up, &recip].into_iter().flatten().cloned().collect();
    let bad = failures(&all, &[Status::ExactEqual]);
    for b in bad.iter().take(10) {
        println!("  {b}");
    }
    verdict(
        7,
        bad.is_empty(),
        &format!(
            "ck {} steps, d3n {} steps, iterative prefix {} and reciprocal {} cases, all exact",
            ck.len(),
            d3n.len(),
            up.len(),
            recip.len()
        ),
    );
}
