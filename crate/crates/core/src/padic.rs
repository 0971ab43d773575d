//! Finite-level model of the fermionic p-adic integral.
//!
//! At level N the integral of f over ℤ_p is approximated by the alternating
//! sum Σ_{x<p^N} f(x)(−1)^x, and an r-fold integral by the corresponding
//! r-fold sum of f(x₁+⋯+x_r). For a polynomial integrand with p-integral
//! coefficients consecutive levels agree modulo p^N, so "integral = target"
//! is checked as the congruence v_p(S_N − target) ≥ N.
//!
//! The r-fold sum is never enumerated directly: f(x₁+⋯+x_r) is expanded into
//! power sums, and the alternating moments Mⱼ = Σ_{x<p^N} (−1)^x x^j of a
//! single variable are combined by binomial convolution.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::degenerate::{euler_numbers, falling, Method};
use crate::poly::{Exponents, MPoly, Var};
use crate::rational::{self, Rational};

/// Default cap on the number of terms p^{N·r} of a defining sum.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("p = {0} is not an odd prime")]
    NonOddPrime(u64),
    #[error("sum over {terms} terms exceeds the budget of {budget}")]
    BudgetExceeded { terms: String, budget: u64 },
    #[error("denominator of {value} is not invertible modulo {p}")]
    DenominatorNotInvertible { value: String, p: u64 },
    #[error("integrand must be a polynomial in x and λ only, got {0}")]
    InvalidIntegrand(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Exact value of an r-fold alternating sum at level N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermionicSum {
    pub p: u64,
    pub level: u32,
    pub vars: u32,
    pub integrand: MPoly,
    pub lambda: Rational,
    pub value: Rational,
}

/// Verdict on lhs ≡ rhs (mod p^M).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub lhs: Rational,
    pub rhs: Rational,
    pub p: u64,
    pub exponent: u32,
    /// v_p(lhs − rhs); `None` when the two sides are exactly equal.
    pub valuation: Option<i64>,
    pub lhs_residue: BigInt,
    pub rhs_residue: BigInt,
    pub verdict: bool,
}

impl Congruence {
    pub fn new(lhs: Rational, rhs: Rational, p: u64, exponent: u32) -> Result<Self, PadicError> {
        let modulus = rational::pow_int(p as i64, exponent);
        let residue = |q: &Rational| {
            rational::residue(q, &modulus).ok_or_else(|| PadicError::DenominatorNotInvertible {
                value: rational::to_text(q),
                p,
            })
        };
        let lhs_residue = residue(&lhs)?;
        let rhs_residue = residue(&rhs)?;
        let valuation = rational::valuation(&(&lhs - &rhs), p);
        let verdict = valuation.is_none_or(|v| v >= exponent as i64);
        debug_assert_eq!(verdict, lhs_residue == rhs_residue);
        Ok(Congruence {
            lhs,
            rhs,
            p,
            exponent,
            valuation,
            lhs_residue,
            rhs_residue,
            verdict,
        })
    }

    pub fn is_exact(&self) -> bool {
        self.valuation.is_none()
    }
}

/// Which finite-sum identity a [`CheckReport`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// ∫f(x+1) + ∫f(x) = 2f(0)
    Eq2,
    /// ∫f(x+n) + (−1)^{n−1}∫f(x) = 2 Σ_{l<n} (−1)^{n−1−l} f(l)
    Eq3,
    /// r-fold ∫(x₁+⋯+x_r | λ)ₙ = 𝓔ₙ^{(r)}(λ)
    Eq10,
}

impl std::str::FromStr for Check {
    type Err = PadicError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eq2" => Ok(Check::Eq2),
            "eq3" => Ok(Check::Eq3),
            "eq10" => Ok(Check::Eq10),
            _ => Err(PadicError::InvalidParameter(format!("unknown check {s:?}"))),
        }
    }
}

/// Machine-readable outcome of one congruence check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: Check,
    pub p: u64,
    #[serde(rename = "N")]
    pub level: u32,
    pub r: u32,
    /// Polynomial index for eq10, shift for eq2/eq3.
    pub n: u32,
    pub lambda: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub f: Option<String>,
    pub sum: String,
    pub target: String,
    pub valuation: Option<i64>,
    pub required: u32,
    pub pass: bool,
}

impl CheckReport {
    fn new(check: Check, level: u32, r: u32, n: u32, lambda: &Rational, f: Option<&MPoly>, c: &Congruence) -> Self {
        CheckReport {
            check,
            p: c.p,
            level,
            r,
            n,
            lambda: rational::to_text(lambda),
            f: f.map(|f| f.to_string()),
            sum: rational::to_text(&c.lhs),
            target: rational::to_text(&c.rhs),
            valuation: c.valuation,
            required: c.exponent,
            pass: c.verdict,
        }
    }
}

fn require_odd_prime(p: u64) -> Result<(), PadicError> {
    if p.is_multiple_of(2) || !rational::is_prime(p) {
        return Err(PadicError::NonOddPrime(p));
    }
    Ok(())
}

fn check_budget(p: u64, level: u32, vars: u32, budget: u64) -> Result<(), PadicError> {
    let terms = BigInt::from(p).pow(level * vars);
    if terms > BigInt::from(budget) {
        return Err(PadicError::BudgetExceeded {
            terms: terms.to_string(),
            budget,
        });
    }
    Ok(())
}

/// f with λ := λ₀, as coefficients of 1, x, x², …
fn univariate(f: &MPoly, lambda: &Rational) -> Result<Vec<Rational>, PadicError> {
    if f.contains(Var::Y) {
        return Err(PadicError::InvalidIntegrand(f.to_string()));
    }
    let g = f.subst(Var::Lambda, &MPoly::constant(lambda.clone()));
    let deg = g.degree_in(Var::X).unwrap_or(0);
    Ok((0..=deg).map(|k| g.coeff(Exponents([k, 0, 0]))).collect())
}

/// Mⱼ = Σ_{x<len} (−1)^x x^j for j ≤ max.
fn alternating_moments(len: u64, max: usize) -> Vec<BigInt> {
    let mut m = vec![BigInt::zero(); max + 1];
    for x in 0..len {
        let bx = BigInt::from(x);
        let mut pw = BigInt::one();
        let odd = x % 2 == 1;
        for mj in m.iter_mut() {
            if odd {
                *mj -= &pw;
            } else {
                *mj += &pw;
            }
            pw *= &bx;
        }
    }
    m
}

/// Σ_{x₁,…,x_r < p^N} f(x₁+⋯+x_r) Π(−1)^{xᵢ}, exactly.
pub fn fermionic_sum(
    f: &MPoly,
    lambda: &Rational,
    p: u64,
    level: u32,
    vars: u32,
    budget: u64,
) -> Result<FermionicSum, PadicError> {
    require_odd_prime(p)?;
    if level == 0 || vars == 0 {
        return Err(PadicError::InvalidParameter("level and variable count must be at least 1".into()));
    }
    check_budget(p, level, vars, budget)?;
    let coeffs = univariate(f, lambda)?;
    let deg = coeffs.len() - 1;
    let moments = alternating_moments((p as u128).pow(level) as u64, deg);
    // power sums of x₁+⋯+x_r, by binomial convolution of the moments
    let mut sums = moments.clone();
    for _ in 1..vars {
        sums = (0..=deg)
            .map(|k| {
                (0..=k)
                    .map(|j| rational::binomial(k as u32, j as u32) * &sums[j] * &moments[k - j])
                    .sum()
            })
            .collect();
    }
    let value = coeffs
        .iter()
        .zip(&sums)
        .map(|(a, s)| a * Rational::from_integer(s.clone()))
        .fold(Rational::zero(), |acc, t| acc + t);
    Ok(FermionicSum {
        p,
        level,
        vars,
        integrand: f.clone(),
        lambda: lambda.clone(),
        value,
    })
}

/// Reference enumeration of the r-fold sum, term by term. Only for small
/// p^{N·r}; used to cross-check [`fermionic_sum`].
pub fn fermionic_sum_enumerated(f: &MPoly, lambda: &Rational, p: u64, level: u32, vars: u32) -> Rational {
    let len = p.pow(level);
    let zero = Rational::zero();
    let lam = lambda.clone();
    let mut total = Rational::zero();
    let mut idx = vec![0u64; vars as usize];
    loop {
        let s: u64 = idx.iter().sum();
        let v = f.eval(&rational::int(s as i64), &zero, &lam);
        if s.is_multiple_of(2) {
            total += v;
        } else {
            total -= v;
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return total;
            }
            idx[i] += 1;
            if idx[i] < len {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// The congruence argument needs p-integral coefficients once λ₀ is substituted.
fn require_p_integral(f: &MPoly, lambda: &Rational, p: u64) -> Result<(), PadicError> {
    let modulus = BigInt::from(p);
    for c in univariate(f, lambda)? {
        if rational::residue(&c, &modulus).is_none() {
            return Err(PadicError::DenominatorNotInvertible {
                value: rational::to_text(&c),
                p,
            });
        }
    }
    Ok(())
}

fn value_at(f: &MPoly, x: i64, lambda: &Rational) -> Rational {
    f.eval(&rational::int(x), &Rational::zero(), lambda)
}

/// ∫f(x+1) + ∫f(x) ≡ 2f(0) (mod p^N).
pub fn check_eq2(f: &MPoly, lambda: &Rational, p: u64, level: u32, budget: u64) -> Result<Congruence, PadicError> {
    check_eq3(f, lambda, p, level, 1, budget)
}

/// ∫f(x+n) + (−1)^{n−1}∫f(x) ≡ 2 Σ_{l<n} (−1)^{n−1−l} f(l) (mod p^N).
pub fn check_eq3(
    f: &MPoly,
    lambda: &Rational,
    p: u64,
    level: u32,
    shift: u32,
    budget: u64,
) -> Result<Congruence, PadicError> {
    if shift == 0 {
        return Err(PadicError::InvalidParameter("shift must be at least 1".into()));
    }
    require_p_integral(f, lambda, p)?;
    let shifted = f.subst(Var::X, &(&MPoly::x() + &MPoly::from_int(shift as i64)));
    let a = fermionic_sum(&shifted, lambda, p, level, 1, budget)?.value;
    let b = fermionic_sum(f, lambda, p, level, 1, budget)?.value;
    let lhs = a + b * rational::int(rational::alt_sign(shift - 1));
    let rhs = (0..shift)
        .map(|l| value_at(f, l as i64, lambda) * rational::int(2 * rational::alt_sign(shift - 1 - l)))
        .fold(Rational::zero(), |acc, t| acc + t);
    Congruence::new(lhs, rhs, p, level)
}

/// r-fold ∫(x₁+⋯+x_r | λ₀)ₙ ≡ 𝓔ₙ^{(r)}(λ₀) (mod p^N).
pub fn check_eq10(n: u32, vars: u32, lambda: &Rational, p: u64, level: u32, budget: u64) -> Result<Congruence, PadicError> {
    let f = falling(&MPoly::x(), &Rational::one(), n);
    require_p_integral(&f, lambda, p)?;
    let sum = fermionic_sum(&f, lambda, p, level, vars, budget)?.value;
    let target = euler_numbers(vars, n, Method::Recurrence).numbers[n as usize].eval(
        &Rational::zero(),
        &Rational::zero(),
        lambda,
    );
    Congruence::new(sum, target, p, level)
}

/// Runs a check and packages it for output. `f` is ignored by eq10; `n` is
/// the index for eq10 and the shift for eq3 (eq2 always uses shift 1).
#[allow(clippy::too_many_arguments)]
pub fn run_check(
    check: Check,
    f: Option<&MPoly>,
    lambda: &Rational,
    p: u64,
    level: u32,
    n: u32,
    vars: u32,
    budget: u64,
) -> Result<CheckReport, PadicError> {
    let need_f = || f.ok_or_else(|| PadicError::InvalidParameter("this check needs an integrand f".into()));
    match check {
        Check::Eq2 => {
            let f = need_f()?;
            let c = check_eq2(f, lambda, p, level, budget)?;
            Ok(CheckReport::new(check, level, 1, 1, lambda, Some(f), &c))
        }
        Check::Eq3 => {
            let f = need_f()?;
            let c = check_eq3(f, lambda, p, level, n, budget)?;
            Ok(CheckReport::new(check, level, 1, n, lambda, Some(f), &c))
        }
        Check::Eq10 => {
            let c = check_eq10(n, vars, lambda, p, level, budget)?;
            Ok(CheckReport::new(check, level, vars, n, lambda, None, &c))
        }
    }
}

/// One (p, N, n, r, λ₀) tuple of the eq10 congruence grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eq10Case {
    pub p: u64,
    pub level: u32,
    pub n: u32,
    pub vars: u32,
    pub lambda: Rational,
}

/// p ∈ {3, 5, 7}; N ≤ 4 (N ≤ 6 for p = 3); λ₀ ∈ {0, 1, 2} plus 1/3 when p ≠ 3;
/// n ≤ 6; r ∈ {1, 2}. Sorted by (p, N, λ₀, n, r).
pub fn default_eq10_grid() -> Vec<Eq10Case> {
    let mut out = Vec::new();
    for p in [3u64, 5, 7] {
        let max_level = if p == 3 { 6 } else { 4 };
        let mut lambdas = vec![rational::int(0), rational::int(1), rational::int(2)];
        if p != 3 {
            lambdas.push(rational::frac(1, 3));
        }
        for level in 1..=max_level {
            for lambda in &lambdas {
                for n in 0..=6 {
                    for vars in 1..=2 {
                        out.push(Eq10Case {
                            p,
                            level,
                            n,
                            vars,
                            lambda: lambda.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}
