//! Acceptance suite: one test per exit criterion, each printing a PASS/FAIL
//! line with its timing against the stated budget.
//!
//! Run with `cargo test -p degen-euler-core --test acceptance -- --nocapture`
//! to see the summary lines.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use degen_euler_core::degenerate::{
    classical_euler_numbers, classical_euler_poly, classical_limit, euler_numbers, euler_poly, falling,
    stirling1, stirling1_from_falling, stirling_expand, Method,
};
use degen_euler_core::identity::{
    default_grid, verify, verify_grid, IdentityId, IdentityParams, Side, VerificationReport, VerifyOptions,
};
use degen_euler_core::padic::{check_eq10, default_eq10_grid, DEFAULT_BUDGET};
use degen_euler_core::rational::{frac, int};
use degen_euler_core::{MPoly, Rational, Var};
use num_traits::One;

struct GridRun {
    reports: Vec<VerificationReport>,
    elapsed: Duration,
}

fn run(ids: &[IdentityId]) -> GridRun {
    let start = Instant::now();
    let grid: Vec<IdentityParams> = ids.iter().flat_map(|id| default_grid(*id)).collect();
    let reports = verify_grid(&grid, VerifyOptions::default())
        .into_iter()
        .zip(&grid)
        .flat_map(|(r, p)| r.unwrap_or_else(|e| panic!("{p:?}: {e}")))
        .collect();
    GridRun {
        reports,
        elapsed: start.elapsed(),
    }
}

// Grids are computed once and shared with the classical-limit criterion.
fn thm1_run() -> &'static GridRun {
    static RUN: OnceLock<GridRun> = OnceLock::new();
    RUN.get_or_init(|| run(&[IdentityId::Thm1]))
}

fn thm4_run() -> &'static GridRun {
    static RUN: OnceLock<GridRun> = OnceLock::new();
    RUN.get_or_init(|| run(&[IdentityId::Thm4]))
}

fn corollary_run() -> &'static GridRun {
    static RUN: OnceLock<GridRun> = OnceLock::new();
    RUN.get_or_init(|| {
        run(&[
            IdentityId::Thm2,
            IdentityId::Cor3,
            IdentityId::Cor5,
            IdentityId::MultFormula,
        ])
    })
}

fn eq13_run() -> &'static GridRun {
    static RUN: OnceLock<GridRun> = OnceLock::new();
    RUN.get_or_init(|| run(&[IdentityId::Eq13]))
}

fn eq17_run() -> &'static GridRun {
    static RUN: OnceLock<GridRun> = OnceLock::new();
    RUN.get_or_init(|| run(&[IdentityId::Eq17]))
}

fn report(criterion: u32, what: &str, ok: bool, elapsed: Duration, limit_s: u64, detail: &str) {
    let within = elapsed <= Duration::from_secs(limit_s);
    println!(
        "[criterion {criterion:>2}] {} {what}: {detail}; {:.2}s (limit {limit_s}s)",
        if ok && within { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(ok, "criterion {criterion} ({what}) failed: {detail}");
    assert!(within, "criterion {criterion} ({what}) exceeded {limit_s}s");
}

fn all_zero(reports: &[VerificationReport]) -> (bool, usize) {
    let bad = reports.iter().filter(|r| !r.equal || !r.difference.is_zero()).count();
    (bad == 0, bad)
}

#[test]
fn criterion_01_theorem1_grid() {
    let run = thm1_run();
    let (ok, bad) = all_zero(&run.reports);
    assert_eq!(run.reports.len(), 4 * 4 * 9 * 3);
    report(1, "thm1 grid", ok, run.elapsed, 120, &format!("{} tuples, {bad} unequal", run.reports.len()));
}

#[test]
fn criterion_02_theorem4_grid() {
    let run = thm4_run();
    let (ok, bad) = all_zero(&run.reports);
    assert_eq!(run.reports.len(), 4 * 4 * 9 * 3);
    report(2, "thm4 grid", ok, run.elapsed, 180, &format!("{} tuples, {bad} unequal", run.reports.len()));
}

#[test]
fn criterion_03_corollaries() {
    let run = corollary_run();
    let (ok, bad) = all_zero(&run.reports);
    assert_eq!(run.reports.len(), 2 * (5 * 5 * 11) + 2 * (5 * 11));
    report(
        3,
        "thm2/cor3/cor5/multformula",
        ok,
        run.elapsed,
        60,
        &format!("{} tuples, {bad} unequal", run.reports.len()),
    );
}

#[test]
fn criterion_04_boundary_identities() {
    let run = eq13_run();
    let (ok, bad) = all_zero(&run.reports);
    assert_eq!(run.reports.len(), 9 * 11);
    let odd = run.reports.iter().filter(|r| r.identity == IdentityId::Eq14).count();
    assert_eq!(odd, 5 * 11);
    report(4, "eq13/eq14", ok, run.elapsed, 10, &format!("{} tuples, {bad} unequal", run.reports.len()));
}

#[test]
fn criterion_05_quotient_series() {
    let run = eq17_run();
    let (ok, bad) = all_zero(&run.reports);
    assert_eq!(run.reports.len(), 4);
    for r in &run.reports {
        assert_eq!(r.params.order, Some(8));
        assert!(matches!(r.lhs, Side::Series(ref s) if s.order() == 8));
    }
    report(5, "eq17 series", ok, run.elapsed, 20, &format!("{} tuples, {bad} unequal", run.reports.len()));
}

#[test]
fn criterion_06_kernel() {
    let start = Instant::now();
    let grid = default_grid(IdentityId::KernelSym);
    assert_eq!(grid.len(), 48);
    let checks: Vec<Vec<VerificationReport>> = grid
        .par_iter()
        .map(|p| verify(p, VerifyOptions::default()).unwrap())
        .collect();
    let elapsed = start.elapsed();
    let mut sym_bad = 0;
    let mut exp_bad = 0;
    for c in &checks {
        assert_eq!(c.len(), 5);
        sym_bad += usize::from(!c[0].equal);
        exp_bad += c[1..].iter().filter(|r| !r.equal).count();
        if let Side::Series(k) = &c[0].lhs {
            assert_eq!(k.order(), 6);
            assert_eq!(*k.coeff(0), MPoly::one());
        }
    }
    report(
        6,
        "kernel symmetry and expansions",
        sym_bad == 0 && exp_bad == 0,
        elapsed,
        120,
        &format!("48 kernels, {sym_bad} asymmetric, {exp_bad} expansion mismatches"),
    );
}

#[test]
fn criterion_07_dual_algorithms() {
    let start = Instant::now();
    let mut ok = true;
    for r in 0..=4 {
        let a = euler_numbers(r, 12, Method::Series).numbers;
        let b = euler_numbers(r, 12, Method::Recurrence).numbers;
        ok &= a == b;
    }
    for n in 0..=20 {
        for l in 0..=n {
            ok &= stirling1(n, l).unwrap() == stirling1_from_falling(n, l).unwrap();
        }
        ok &= stirling_expand(n) == falling(&MPoly::x(), &Rational::one(), n);
    }
    report(7, "series vs recurrence, Stirling routes", ok, start.elapsed(), 5, "r <= 4, N <= 12; n <= 20");
}

#[test]
fn criterion_08_classical_limits() {
    let runs = [thm1_run(), thm4_run(), corollary_run(), eq13_run(), eq17_run()];
    let start = Instant::now();
    let mut checked = 0usize;
    let mut bad = 0usize;
    for run in runs {
        let limits: Vec<bool> = run.reports.par_iter().map(|r| r.classical_limit().equal).collect();
        checked += limits.len();
        bad += limits.iter().filter(|ok| !**ok).count();
    }
    // λ = 0 sides of cor3/multformula are the classical Eₙ(w₁x)
    let zero = |s: &Side| match s {
        Side::Poly(p) => classical_limit(p),
        Side::Series(_) => unreachable!(),
    };
    for r in &corollary_run().reports {
        let (w1, n) = (r.params.w1.unwrap(), r.params.n.unwrap());
        let scaled = classical_euler_poly(n).subst(Var::X, &MPoly::x().scale(&int(w1 as i64)));
        match r.identity {
            IdentityId::Cor3 => bad += usize::from(zero(&r.lhs) != scaled),
            IdentityId::MultFormula => bad += usize::from(zero(&r.rhs) != scaled),
            _ => {}
        }
    }
    // 𝓔ₙ(x|0) against the classical recurrence
    let e = classical_euler_numbers(8);
    assert_eq!(e[1], frac(-1, 2));
    assert_eq!(classical_euler_poly(2), "x^2 - x".parse().unwrap());
    for n in 0..=8 {
        let degen = classical_limit(&euler_poly(1, n, &MPoly::x(), &Rational::one()));
        bad += usize::from(degen != classical_euler_poly(n));
    }
    report(
        8,
        "classical limits",
        bad == 0,
        start.elapsed(),
        5,
        &format!("{checked} reports at lambda = 0, {bad} failures"),
    );
}

#[test]
fn criterion_09_padic_congruences() {
    let start = Instant::now();
    let grid = default_eq10_grid();
    assert_eq!(grid.len(), 252 + 224 + 224);
    let results: Vec<_> = grid
        .par_iter()
        .map(|c| check_eq10(c.n, c.vars, &c.lambda, c.p, c.level, DEFAULT_BUDGET).unwrap())
        .collect();
    let bad = results.iter().filter(|c| !c.verdict).count();
    let hand = check_eq10(1, 1, &int(0), 3, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!((hand.lhs.clone(), hand.rhs.clone()), (int(4), frac(-1, 2)));
    assert!(hand.verdict && hand.valuation.unwrap() >= 2);
    report(
        9,
        "p-adic congruences",
        bad == 0,
        start.elapsed(),
        120,
        &format!("{} cases, {bad} with v_p < N", results.len()),
    );
}

#[test]
fn criterion_10_falsification() {
    let start = Instant::now();
    let r = verify(&IdentityParams::cor3(2, 1), VerifyOptions { allow_even: true }).unwrap();
    let witness = &r[0];
    let ok = !witness.equal && !witness.difference.is_zero();
    report(10, "parity falsification", ok, start.elapsed(), 1, &format!("difference {}", witness.difference));
}
