//! `degen-euler`: tables of degenerate Euler numbers and polynomials,
//! symbolic verification of the symmetric identities, and p-adic checks.
//!
//! Exit codes: 0 when everything requested holds, 1 when some identity or
//! congruence is falsified, 2 on usage errors (bad flags, parity violations,
//! budget overruns).

mod grid;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use degen_euler_core::identity::{
    build_kernel, verify, verify_grid, IdentityError, IdentityId, IdentityParams, VerificationReport,
    VerifyOptions,
};
use degen_euler_core::padic::{run_check, Check, CheckReport, PadicError, DEFAULT_BUDGET};
use degen_euler_core::table::{altsum_table, euler_table, stirling_table, Format};
use degen_euler_core::MPoly;

use grid::{
    build_grid, build_padic_grid, list_arg, rational_list_arg, GridSpec, List, PadicSpec, RationalList, ALL_IDENTITIES,
};

const BUDGET_ENV: &str = "DEGEN_EULER_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "degen-euler", version, about = "Degenerate Euler polynomials: tables, identities, p-adic checks")]
struct Cli {
    /// Output format: plain, json or latex.
    #[arg(long, global = true, default_value = "plain")]
    format: Format,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degenerate Euler polynomials E_n^(r)(x|L), or numbers with --numbers.
    Euler {
        #[arg(long, default_value_t = 1)]
        order: u32,
        #[arg(long)]
        max: u32,
        #[arg(long)]
        numbers: bool,
    },
    /// Stirling numbers of the first kind S1(n, l) for n <= max.
    Stirling {
        #[arg(long)]
        max: u32,
    },
    /// Alternating degenerate power sums S~_k(n|L) for k <= max.
    Altsum {
        #[arg(long)]
        max: u32,
        /// Values of n, e.g. `1,3,5` or `0..4`.
        #[arg(long, value_parser = list_arg, default_value = "1,3,5,7,9")]
        n: List,
    },
    /// Verify an identity over a parameter grid.
    Verify(VerifyArgs),
    /// Check a fermionic sum congruence modulo p^N.
    Padic(PadicArgs),
    /// The two-variable kernel K(w1, w2) as a series in t.
    Kernel(KernelArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// thm1, thm2, cor3, thm4, cor5, multformula, eq13, eq14, eq17 or kernel-sym.
    #[arg(required_unless_present = "all", conflicts_with = "all")]
    identity: Option<String>,
    /// Run every identity on its default grid.
    #[arg(long)]
    all: bool,
    #[arg(long, value_parser = list_arg)]
    w1: Option<List>,
    #[arg(long, value_parser = list_arg)]
    w2: Option<List>,
    #[arg(long, value_parser = list_arg)]
    n: Option<List>,
    #[arg(long, value_parser = list_arg)]
    m: Option<List>,
    #[arg(long, value_parser = list_arg)]
    order: Option<List>,
    /// Accept even parameters where odd ones are required.
    #[arg(long)]
    allow_even: bool,
}

#[derive(Args, Debug)]
struct PadicArgs {
    /// eq2, eq3 or eq10.
    check: String,
    #[arg(long, value_parser = list_arg)]
    p: Option<List>,
    #[arg(long = "N", value_parser = list_arg)]
    level: Option<List>,
    /// Index for eq10, shift for eq3.
    #[arg(long, value_parser = list_arg)]
    n: Option<List>,
    /// Number of summation variables (eq10).
    #[arg(long, value_parser = list_arg)]
    r: Option<List>,
    /// Rational values of L, e.g. `0,1/3`.
    #[arg(long, value_parser = rational_list_arg, allow_hyphen_values = true)]
    lambda: Option<RationalList>,
    /// Integrand in x and L for eq2/eq3, e.g. "x^2 - L*x".
    #[arg(long)]
    f: Option<MPoly>,
    /// Maximum number of terms p^(N*r) per sum.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Debug)]
struct KernelArgs {
    #[arg(long)]
    w1: u32,
    #[arg(long)]
    w2: u32,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, default_value_t = 6)]
    order: u32,
    /// Also check symmetry and the closed-form expansions.
    #[arg(long)]
    check: bool,
    #[arg(long)]
    allow_even: bool,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = String::new();
    let result = run(&cli, &mut out);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli, out: &mut String) -> Result<u8, Failure> {
    match &cli.command {
        Command::Euler { order, max, numbers } => {
            out.push_str(&euler_table(*order, *max, *numbers).render(cli.format));
            Ok(0)
        }
        Command::Stirling { max } => {
            out.push_str(&stirling_table(*max).render(cli.format));
            Ok(0)
        }
        Command::Altsum { max, n } => {
            out.push_str(&altsum_table(*max, &n.0).render(cli.format));
            Ok(0)
        }
        Command::Verify(args) => cmd_verify(args, cli.format, out),
        Command::Padic(args) => cmd_padic(args, cli.format, out),
        Command::Kernel(args) => cmd_kernel(args, cli.format, out),
    }
}

fn cmd_verify(args: &VerifyArgs, format: Format, out: &mut String) -> Result<u8, Failure> {
    let ids: Vec<IdentityId> = match &args.identity {
        Some(name) => vec![name.parse().map_err(|e: IdentityError| usage(e.to_string()))?],
        None => ALL_IDENTITIES.to_vec(),
    };
    let spec = GridSpec {
        w1: args.w1.as_ref().map(|l| l.0.clone()),
        w2: args.w2.as_ref().map(|l| l.0.clone()),
        n: args.n.as_ref().map(|l| l.0.clone()),
        m: args.m.as_ref().map(|l| l.0.clone()),
        order: args.order.as_ref().map(|l| l.0.clone()),
    };
    let mut grid: Vec<IdentityParams> = ids.iter().flat_map(|id| build_grid(*id, &spec)).collect();
    if args.identity.is_some() {
        grid.sort();
    }
    let opts = VerifyOptions {
        allow_even: args.allow_even,
    };
    let mut reports = Vec::new();
    for (params, result) in grid.iter().zip(verify_grid(&grid, opts)) {
        match result {
            Ok(r) => reports.extend(r),
            Err(e) => return Err(usage(format!("{}: {e}", describe_params(params)))),
        }
    }
    let verbose = grid.len() == 1;
    emit_reports(&reports, format, verbose, out);
    let falsified = reports.iter().filter(|r| !r.equal).count();
    eprintln!("{} reports, {} equal, {falsified} falsified", reports.len(), reports.len() - falsified);
    Ok(u8::from(falsified > 0))
}

fn describe_params(p: &IdentityParams) -> String {
    let mut s = p.identity.map(|id| id.to_string()).unwrap_or_default();
    for (name, value) in [("w1", p.w1), ("w2", p.w2), ("n", p.n), ("m", p.m), ("order", p.order)] {
        if let Some(v) = value {
            s.push_str(&format!(" {name}={v}"));
        }
    }
    s
}

fn emit_reports(reports: &[VerificationReport], format: Format, verbose: bool, out: &mut String) {
    for r in reports {
        match format {
            Format::Json => {
                out.push_str(&serde_json::to_string(r).expect("report serializes"));
                out.push('\n');
            }
            Format::Latex => {
                out.push_str(&r.to_latex());
                out.push('\n');
            }
            Format::Plain => {
                let mut head = format!(
                    "{} {}",
                    if r.equal { "PASS" } else { "FAIL" },
                    describe_params(&IdentityParams {
                        identity: Some(r.identity),
                        ..r.params.clone()
                    })
                );
                if let Some(d) = &r.detail {
                    head.push_str(&format!(" [{d}]"));
                }
                out.push_str(&head);
                out.push('\n');
                if verbose || !r.equal {
                    out.push_str(&format!("  lhs: {}\n  rhs: {}\n", r.lhs, r.rhs));
                }
                if !r.equal {
                    out.push_str(&format!("  difference: {}\n", r.difference));
                }
            }
        }
    }
}

fn budget(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{BUDGET_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn cmd_padic(args: &PadicArgs, format: Format, out: &mut String) -> Result<u8, Failure> {
    let check: Check = args.check.parse().map_err(|e: PadicError| usage(e.to_string()))?;
    let budget = budget(args.budget)?;
    let spec = PadicSpec {
        p: args.p.as_ref().map(|l| l.0.clone()),
        level: args.level.as_ref().map(|l| l.0.clone()),
        n: args.n.as_ref().map(|l| l.0.clone()),
        r: args.r.as_ref().map(|l| l.0.clone()),
        lambda: args.lambda.as_ref().map(|l| l.0.clone()),
    };
    let grid = match check {
        Check::Eq10 => build_padic_grid(&spec, (0..=6).collect(), vec![1, 2]),
        Check::Eq2 => build_padic_grid(&spec, vec![1], vec![1]),
        Check::Eq3 => build_padic_grid(&spec, vec![1, 2, 3], vec![1]),
    };
    if check != Check::Eq10 && args.f.is_none() {
        return Err(usage(format!("{} needs an integrand: pass --f", args.check)));
    }
    let results: Vec<Result<CheckReport, PadicError>> = grid
        .par_iter()
        .map(|c| run_check(check, args.f.as_ref(), &c.lambda, c.p, c.level, c.n, c.vars, budget))
        .collect();
    let mut reports = Vec::with_capacity(results.len());
    for (case, result) in grid.iter().zip(results) {
        match result {
            Ok(r) => reports.push(r),
            Err(PadicError::BudgetExceeded { terms, budget }) => {
                return Err(usage(format!(
                    "p={} N={} r={}: estimated {terms} terms exceeds the budget of {budget} (raise --budget or {BUDGET_ENV})",
                    case.p, case.level, case.vars
                )))
            }
            Err(e) => return Err(usage(format!("p={} N={}: {e}", case.p, case.level))),
        }
    }
    for r in &reports {
        match format {
            Format::Json => {
                out.push_str(&serde_json::to_string(r).expect("report serializes"));
                out.push('\n');
            }
            Format::Plain => out.push_str(&plain_check(r)),
            Format::Latex => out.push_str(&latex_check(r)),
        }
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    eprintln!("{} checks, {} passed, {failed} failed", reports.len(), reports.len() - failed);
    Ok(u8::from(failed > 0))
}

fn plain_check(r: &CheckReport) -> String {
    let valuation = match r.valuation {
        None => "exact".to_string(),
        Some(v) => format!("v_p = {v}"),
    };
    let mut s = format!(
        "{} {} p={} N={} r={} n={} lambda={}",
        if r.pass { "PASS" } else { "FAIL" },
        match r.check {
            Check::Eq2 => "eq2",
            Check::Eq3 => "eq3",
            Check::Eq10 => "eq10",
        },
        r.p,
        r.level,
        r.r,
        r.n,
        r.lambda
    );
    if let Some(f) = &r.f {
        s.push_str(&format!(" f={f}"));
    }
    s.push_str(&format!(": sum {}, target {}, {valuation} (need {})\n", r.sum, r.target, r.required));
    s
}

fn latex_check(r: &CheckReport) -> String {
    let (p, level) = (r.p, r.level);
    let mut preamble = String::new();
    let lhs = match r.check {
        Check::Eq10 => {
            let vars = r.r;
            format!(
                "\\sum_{{x_1,\\dots,x_{{{vars}}}<{p}^{{{level}}}}}(x_1+\\cdots+x_{{{vars}}}\\mid {})_{{{}}}(-1)^{{x_1+\\cdots+x_{{{vars}}}}}",
                r.lambda, r.n
            )
        }
        _ => {
            let f = r.f.as_deref().and_then(|f| f.parse::<MPoly>().ok()).map(|f| f.to_latex()).unwrap_or_default();
            preamble = format!("% f(x) = {f}\n");
            format!("\\sum_{{x<{p}^{{{level}}}}}\\bigl(f(x+{n}) + (-1)^{{{n}-1}}f(x)\\bigr)(-1)^{{x}}", n = r.n)
        }
    };
    format!(
        "% {} {}\n{preamble}${lhs} = {} \\equiv {} \\pmod{{{p}^{{{}}}}}$\n",
        if r.pass { "pass" } else { "fail" },
        serde_json::to_string(r).expect("report serializes"),
        r.sum,
        r.target,
        r.required
    )
}

fn cmd_kernel(args: &KernelArgs, format: Format, out: &mut String) -> Result<u8, Failure> {
    let opts = VerifyOptions {
        allow_even: args.allow_even,
    };
    if args.check {
        let params = IdentityParams::kernel_sym(args.w1, args.w2, args.m, args.order);
        let reports = verify(&params, opts).map_err(|e| usage(e.to_string()))?;
        emit_reports(&reports, format, false, out);
        let falsified = reports.iter().filter(|r| !r.equal).count();
        return Ok(u8::from(falsified > 0));
    }
    for (name, value) in [("w1", args.w1), ("w2", args.w2)] {
        if value == 0 || (value.is_multiple_of(2) && !args.allow_even) {
            return Err(usage(IdentityError::ParityViolation { name, value }.to_string()));
        }
    }
    if args.m == 0 {
        return Err(usage("m must be at least 1"));
    }
    let k = build_kernel(args.w1, args.w2, args.m, args.order).map_err(|e| usage(e.to_string()))?;
    match format {
        Format::Plain => out.push_str(&format!("{k}\n")),
        Format::Latex => out.push_str(&format!("{}\n", k.to_latex())),
        Format::Json => {
            let doc = serde_json::json!({
                "w1": args.w1,
                "w2": args.w2,
                "m": args.m,
                "order": args.order,
                "kernel": k.to_json(),
            });
            out.push_str(&format!("{doc}\n"));
        }
    }
    Ok(0)
}
