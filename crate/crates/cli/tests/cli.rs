//! End-to-end runs of the `degen-euler` binary: output shape and exit codes.

use std::process::{Command, Output};

use degen_euler_core::identity::{Side, VerificationReport};
use degen_euler_core::padic::CheckReport;
use degen_euler_core::MPoly;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degen-euler"))
        .args(args)
        .env_remove("DEGEN_EULER_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn poly(s: &str) -> MPoly {
    s.parse().unwrap()
}

#[test]
fn euler_numbers_of_order_one() {
    let o = run(&["euler", "--order", "1", "--max", "2", "--numbers"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "E_0(L) = 1\nE_1(L) = -1/2\nE_2(L) = 1/2*L\n");
}

#[test]
fn euler_order_zero_is_falling_factorial() {
    let o = run(&["euler", "--order", "0", "--max", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let texts: Vec<MPoly> = rows.iter().map(|r| poly(r["text"].as_str().unwrap())).collect();
    assert_eq!(texts[0], MPoly::one());
    assert_eq!(texts[1], MPoly::x());
    assert_eq!(texts[2], poly("x^2 - x L"));
    assert_eq!(texts[3], poly("x^3 - 3 x^2 L + 2 x L^2"));
    for r in rows {
        let back: MPoly = serde_json::from_value(r["value"].clone()).unwrap();
        assert_eq!(back, poly(r["text"].as_str().unwrap()));
    }
}

#[test]
fn euler_numbers_of_order_two() {
    let o = run(&["euler", "--order", "2", "--max", "1", "--numbers"]);
    assert_eq!(stdout(&o), "E_0^(2)(L) = 1\nE_1^(2)(L) = -1\n");
}

#[test]
fn latex_tables_render() {
    let o = run(&["euler", "--max", "1", "--format", "latex"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.starts_with("\\begin{tabular}"));
    assert!(s.contains("\\mathcal{E}_{1}(x\\mid\\lambda)"));
}

#[test]
fn stirling_and_altsum_tables() {
    let o = run(&["stirling", "--max", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("S1(3,1) = 2\n"));
    assert_eq!(stdout(&o).lines().count(), 10);

    let o = run(&["altsum", "--max", "1", "--n", "1,3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "S~_0(1|L) = 0\nS~_1(1|L) = -1\nS~_0(3|L) = 0\nS~_1(3|L) = -2\n");
}

#[test]
fn verify_trivial_instance_passes() {
    let o = run(&["verify", "thm2", "--w1", "1", "--w2", "1", "--n", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("PASS thm2 w1=1 w2=1 n=3\n"));
}

#[test]
fn verify_json_round_trips() {
    let o = run(&["verify", "cor3", "--w1", "3", "--n", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    let report: VerificationReport = serde_json::from_str(lines[0]).unwrap();
    assert!(report.equal);
    assert_eq!(report.lhs, Side::Poly(poly("3x - 1/2")));
    assert_eq!(report.rhs, Side::Poly(poly("3x - 1/2")));
    assert_eq!(serde_json::to_string(&report).unwrap(), lines[0]);
}

#[test]
fn even_parameter_is_falsified_with_override() {
    let o = run(&["verify", "cor3", "--w1", "2", "--n", "1", "--allow-even"]);
    assert_eq!(code(&o), 1);
    let s = stdout(&o);
    assert!(s.starts_with("FAIL cor3 w1=2 n=1"));
    assert!(s.contains("difference: 2*x + 1/2"));
}

#[test]
fn even_parameter_without_override_is_usage_error() {
    let o = run(&["verify", "cor3", "--w1", "2", "--n", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("must be odd"));
}

#[test]
fn verify_grid_is_sorted_and_json_lines() {
    let o = run(&["verify", "thm1", "--w1", "3,1", "--w2", "5", "--n", "0..2", "--m", "1", "--format", "json", "--jobs", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let reports: Vec<VerificationReport> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let tuples: Vec<(u32, u32)> = reports.iter().map(|r| (r.params.w1.unwrap(), r.params.n.unwrap())).collect();
    assert_eq!(tuples, vec![(1, 0), (1, 1), (1, 2), (3, 0), (3, 1), (3, 2)]);
    assert!(reports.iter().all(|r| r.equal));
}

#[test]
fn verify_series_identity_and_kernel() {
    let o = run(&["verify", "eq17", "--n", "3", "--order", "4", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r: VerificationReport = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(matches!(r.lhs, Side::Series(ref s) if s.order() == 4));

    let o = run(&["verify", "kernel-sym", "--w1", "1", "--w2", "3", "--m", "1", "--order", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 5);
}

#[test]
fn verify_latex_has_statement() {
    let o = run(&["verify", "eq13", "--n", "2", "--m", "1", "--format", "latex"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\\begin{align*}"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify"][..],
        &["verify", "nonsense"],
        &["verify", "thm1", "--w1", "3..1"],
        &["euler"],
        &["euler", "--max", "2", "--format", "yaml"],
        &["padic", "eq4"],
        &["padic", "eq2", "--p", "3", "--N", "1"],
        &["padic", "eq2", "--p", "4", "--N", "1", "--f", "x"],
        &["padic", "eq10", "--p", "3", "--N", "1", "--lambda", "1/0"],
        &["kernel", "--w1", "2", "--w2", "3"],
        &["bogus"],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn padic_eq10_hand_example() {
    let o = run(&["padic", "eq10", "--p", "3", "--N", "2", "--n", "1", "--r", "1", "--lambda", "0", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r: CheckReport = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!((r.sum.as_str(), r.target.as_str()), ("4", "-1/2"));
    assert!(r.pass && r.valuation.unwrap() >= 2);
}

#[test]
fn padic_eq2_and_exact_case() {
    let o = run(&["padic", "eq2", "--p", "3", "--N", "1", "--f", "x^2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS eq2")));

    let o = run(&["padic", "eq10", "--p", "3", "--N", "1", "--n", "0", "--r", "1", "--lambda", "0", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["valuation"].is_null());
    assert_eq!(v["pass"], true);
}

#[test]
fn padic_budget_from_flag_and_env() {
    let o = run(&["padic", "eq10", "--p", "3", "--N", "3", "--n", "1", "--r", "1", "--budget", "10"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("27 terms"));

    let o = Command::new(env!("CARGO_BIN_EXE_degen-euler"))
        .args(["padic", "eq10", "--p", "3", "--N", "3", "--n", "1", "--r", "1"])
        .env("DEGEN_EULER_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("27 terms"));

    let o = Command::new(env!("CARGO_BIN_EXE_degen-euler"))
        .args(["padic", "eq10", "--p", "3", "--N", "3", "--n", "1", "--r", "1", "--budget", "27"])
        .env("DEGEN_EULER_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn padic_default_grid_passes() {
    let o = run(&["padic", "eq10", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let reports: Vec<CheckReport> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 700);
    assert!(reports.iter().all(|r| r.pass));
}

#[test]
fn kernel_series_output() {
    let o = run(&["kernel", "--w1", "1", "--w2", "3", "--order", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1 + (3*x + 3*y - 1/2)*t\n");

    let o = run(&["kernel", "--w1", "1", "--w2", "3", "--order", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["kernel"].as_array().unwrap().len(), 3);

    let o = run(&["kernel", "--w1", "3", "--w2", "5", "--m", "2", "--order", "3", "--check"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 5);
}
