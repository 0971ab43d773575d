//! Construction and exact verification of the symmetric identities.
//!
//! Each identity is checked for fixed integer parameters by building both
//! sides as canonical polynomials in ℚ[x, y, λ] (or truncated series in t)
//! and comparing them structurally. Because the identities are polynomial in
//! x, y and λ, a zero difference is a complete proof for that parameter tuple.
//!
//! The symmetric kernel
//!
//! ```text
//! K⁽ᵐ⁾(w₁,w₂|λ) = (2/(A_{w₁}+1))ᵐ · (1+λt)^{w₁w₂x/λ} · (A_{w₁w₂}+1)
//!               · (2/(A_{w₂}+1))ᵐ · ½ · (1+λt)^{w₁w₂y/λ},   A_w = (1+λt)^{w/λ}
//! ```
//!
//! is invariant under w₁ ↔ w₂, and its coefficients expand in two ways: as an
//! alternating-power-sum convolution (the `thm1` family) and as an alternating
//! sum over shifted arguments (the `thm4` family).

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::degenerate::{alt_sum, euler_numbers, euler_poly, falling, Method};
use crate::poly::{MPoly, Var};
use crate::rational::{self, Rational};
use crate::series::{SeriesError, TSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error("{name} = {value} must be odd (pass the parity override to check it anyway)")]
    ParityViolation { name: &'static str, value: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Identity identifiers as used on the command line and in JSON reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityId {
    #[serde(rename = "thm1")]
    Thm1,
    #[serde(rename = "thm2")]
    Thm2,
    #[serde(rename = "cor3")]
    Cor3,
    #[serde(rename = "thm4")]
    Thm4,
    #[serde(rename = "cor5")]
    Cor5,
    #[serde(rename = "multformula")]
    MultFormula,
    #[serde(rename = "eq13")]
    Eq13,
    #[serde(rename = "eq14")]
    Eq14,
    #[serde(rename = "eq17")]
    Eq17,
    #[serde(rename = "kernel-sym")]
    KernelSym,
}

impl IdentityId {
    pub const ALL: [IdentityId; 10] = [
        IdentityId::Thm1,
        IdentityId::Thm2,
        IdentityId::Cor3,
        IdentityId::Thm4,
        IdentityId::Cor5,
        IdentityId::MultFormula,
        IdentityId::Eq13,
        IdentityId::Eq14,
        IdentityId::Eq17,
        IdentityId::KernelSym,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Thm1 => "thm1",
            IdentityId::Thm2 => "thm2",
            IdentityId::Cor3 => "cor3",
            IdentityId::Thm4 => "thm4",
            IdentityId::Cor5 => "cor5",
            IdentityId::MultFormula => "multformula",
            IdentityId::Eq13 => "eq13",
            IdentityId::Eq14 => "eq14",
            IdentityId::Eq17 => "eq17",
            IdentityId::KernelSym => "kernel-sym",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = IdentityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| IdentityError::InvalidParameter(format!("unknown identity {s:?}")))
    }
}

/// Parameters of one identity instance. Fields an identity does not use are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdentityParams {
    #[serde(skip)]
    pub identity: Option<IdentityId>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub w1: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub w2: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<u32>,
}

impl IdentityParams {
    fn of(id: IdentityId) -> Self {
        IdentityParams {
            identity: Some(id),
            w1: None,
            w2: None,
            n: None,
            m: None,
            order: None,
        }
    }

    pub fn thm1(w1: u32, w2: u32, n: u32, m: u32) -> Self {
        Self { w1: Some(w1), w2: Some(w2), n: Some(n), m: Some(m), ..Self::of(IdentityId::Thm1) }
    }

    pub fn thm2(w1: u32, w2: u32, n: u32) -> Self {
        Self { w1: Some(w1), w2: Some(w2), n: Some(n), ..Self::of(IdentityId::Thm2) }
    }

    pub fn cor3(w1: u32, n: u32) -> Self {
        Self { w1: Some(w1), n: Some(n), ..Self::of(IdentityId::Cor3) }
    }

    pub fn thm4(w1: u32, w2: u32, n: u32, m: u32) -> Self {
        Self { w1: Some(w1), w2: Some(w2), n: Some(n), m: Some(m), ..Self::of(IdentityId::Thm4) }
    }

    pub fn cor5(w1: u32, w2: u32, n: u32) -> Self {
        Self { w1: Some(w1), w2: Some(w2), n: Some(n), ..Self::of(IdentityId::Cor5) }
    }

    pub fn mult_formula(w1: u32, n: u32) -> Self {
        Self { w1: Some(w1), n: Some(n), ..Self::of(IdentityId::MultFormula) }
    }

    /// `m` is the falling-factorial length, `n` the shift.
    pub fn eq13(n: u32, m: u32) -> Self {
        Self { n: Some(n), m: Some(m), ..Self::of(IdentityId::Eq13) }
    }

    pub fn eq14(n: u32, m: u32) -> Self {
        Self { n: Some(n), m: Some(m), ..Self::of(IdentityId::Eq14) }
    }

    pub fn eq17(n: u32, order: u32) -> Self {
        Self { n: Some(n), order: Some(order), ..Self::of(IdentityId::Eq17) }
    }

    pub fn kernel_sym(w1: u32, w2: u32, m: u32, order: u32) -> Self {
        Self {
            w1: Some(w1),
            w2: Some(w2),
            m: Some(m),
            order: Some(order),
            ..Self::of(IdentityId::KernelSym)
        }
    }

    fn need(&self, name: &str, v: Option<u32>) -> Result<u32, IdentityError> {
        v.ok_or_else(|| {
            IdentityError::InvalidParameter(format!(
                "{} requires parameter {name}",
                self.identity.map(|i| i.name()).unwrap_or("identity")
            ))
        })
    }
}

/// One side of an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Side {
    Poly(MPoly),
    Series(TSeries),
}

impl Side {
    pub fn is_zero(&self) -> bool {
        match self {
            Side::Poly(p) => p.is_zero(),
            Side::Series(s) => s.is_zero(),
        }
    }

    fn minus(&self, other: &Side) -> Side {
        match (self, other) {
            (Side::Poly(a), Side::Poly(b)) => Side::Poly(a - b),
            (Side::Series(a), Side::Series(b)) => Side::Series(a - b),
            _ => unreachable!("both sides of an identity have the same kind"),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&MPoly) -> MPoly) -> Side {
        match self {
            Side::Poly(p) => Side::Poly(f(p)),
            Side::Series(s) => Side::Series(s.map(f)),
        }
    }

    pub fn to_latex(&self) -> String {
        match self {
            Side::Poly(p) => p.to_latex(),
            Side::Series(s) => s.to_latex(),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Poly(p) => p.fmt(f),
            Side::Series(s) => s.fmt(f),
        }
    }
}

mod millis {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_millis(u64::deserialize(d)?))
    }
}

/// Outcome of one identity check. `equal` holds iff `difference` is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: IdentityId,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    pub params: IdentityParams,
    pub equal: bool,
    pub lhs: Side,
    pub rhs: Side,
    pub difference: Side,
    #[serde(rename = "elapsed_ms", with = "millis")]
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(identity: IdentityId, params: IdentityParams, lhs: Side, rhs: Side, start: Instant) -> Self {
        let difference = lhs.minus(&rhs);
        VerificationReport {
            identity,
            detail: None,
            params: IdentityParams {
                identity: Some(identity),
                ..params
            },
            equal: difference.is_zero(),
            lhs,
            rhs,
            difference,
            elapsed: start.elapsed(),
        }
    }

    /// Both sides with λ set to 0, compared again.
    pub fn classical_limit(&self) -> VerificationReport {
        let start = Instant::now();
        let zero = |p: &MPoly| p.subst(Var::Lambda, &MPoly::zero());
        let mut r = VerificationReport::new(
            self.identity,
            self.params.clone(),
            self.lhs.map_coeffs(zero),
            self.rhs.map_coeffs(zero),
            start,
        );
        r.detail = Some("lambda = 0".into());
        r
    }

    /// LaTeX rendering of the identity with its parameters and both expanded sides.
    pub fn to_latex(&self) -> String {
        let verdict = if self.equal { "=" } else { "\\neq" };
        format!(
            "% {} {}\n{}\n\\begin{{align*}}\n&{} \\\\\n&{} {}\n\\end{{align*}}\n",
            self.identity,
            serde_json::to_string(&self.params).unwrap_or_default(),
            statement_latex(self.identity, &self.params),
            self.lhs.to_latex(),
            verdict,
            self.rhs.to_latex()
        )
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Accept even w₁, w₂ (and even n where oddness is required).
    pub allow_even: bool,
}

fn odd(name: &'static str, value: u32, opts: VerifyOptions) -> Result<u32, IdentityError> {
    if value == 0 {
        return Err(IdentityError::InvalidParameter(format!("{name} must be positive")));
    }
    if value.is_multiple_of(2) && !opts.allow_even {
        return Err(IdentityError::ParityViolation { name, value });
    }
    Ok(value)
}

fn positive(name: &str, value: u32) -> Result<u32, IdentityError> {
    if value == 0 {
        return Err(IdentityError::InvalidParameter(format!("{name} must be at least 1")));
    }
    Ok(value)
}

fn inv(w: u32) -> Rational {
    rational::frac(1, w as i64)
}

fn binom(n: u32, k: u32) -> Rational {
    Rational::from_integer(rational::binomial(n, k))
}

fn wpow(w: u32, k: u32) -> Rational {
    Rational::from_integer(rational::pow_int(w as i64, k))
}

/// Σⱼ C(n,j) bʲ a^{n−j} 𝓔_{n−j}^{(m)}(bx|λ/a) Σₖ S̃ₖ(a−1|λ/b) C(j,k) 𝓔_{j−k}^{(m−1)}(ay|λ/b).
/// The left side of the w₁,w₂ symmetry is `thm1_side(w₁, w₂, ..)`, the right `thm1_side(w₂, w₁, ..)`.
pub fn thm1_side(a: u32, b: u32, n: u32, m: u32) -> MPoly {
    let (sa, sb) = (inv(a), inv(b));
    let bx = MPoly::x().scale(&rational::int(b as i64));
    let ay = MPoly::y().scale(&rational::int(a as i64));
    let e_x: Vec<MPoly> = (0..=n).map(|i| euler_poly(m, i, &bx, &sa)).collect();
    let e_y: Vec<MPoly> = (0..=n).map(|i| euler_poly(m - 1, i, &ay, &sb)).collect();
    let s: Vec<MPoly> = (0..=n).map(|k| alt_sum(k, a - 1, &sb)).collect();
    let mut acc = MPoly::zero();
    for j in 0..=n {
        let mut inner = MPoly::zero();
        for k in 0..=j {
            inner += &(&s[k as usize] * &e_y[(j - k) as usize]).scale(&binom(j, k));
        }
        let c = binom(n, j) * wpow(b, j) * wpow(a, n - j);
        acc += &(&e_x[(n - j) as usize] * &inner).scale(&c);
    }
    acc
}

/// Σⱼ C(n,j) bʲ a^{n−j} 𝓔_{n−j}(bx|λ/a) S̃ⱼ(a−1|λ/b).
pub fn thm2_side(a: u32, b: u32, n: u32) -> MPoly {
    let (sa, sb) = (inv(a), inv(b));
    let bx = MPoly::x().scale(&rational::int(b as i64));
    let mut acc = MPoly::zero();
    for j in 0..=n {
        let c = binom(n, j) * wpow(b, j) * wpow(a, n - j);
        let t = &euler_poly(1, n - j, &bx, &sa) * &alt_sum(j, a - 1, &sb);
        acc += &t.scale(&c);
    }
    acc
}

/// Σ_{i<a} (−1)ⁱ 𝓔ₖ^{(m)}(bx + (b/a)i | λ/a).
fn shifted_alt_sum(a: u32, b: u32, k: u32, m: u32) -> MPoly {
    let sa = inv(a);
    let bx = MPoly::x().scale(&rational::int(b as i64));
    let mut acc = MPoly::zero();
    for i in 0..a {
        let shift = rational::frac((b * i) as i64, a as i64);
        let t = euler_poly(m, k, &(&bx + &MPoly::constant(shift)), &sa);
        if i % 2 == 0 {
            acc += &t;
        } else {
            acc -= &t;
        }
    }
    acc
}

/// Σₖ C(n,k) aᵏ b^{n−k} 𝓔_{n−k}^{(m−1)}(ay|λ/b) Σ_{i<a} (−1)ⁱ 𝓔ₖ^{(m)}(bx + (b/a)i | λ/a).
pub fn thm4_side(a: u32, b: u32, n: u32, m: u32) -> MPoly {
    let sb = inv(b);
    let ay = MPoly::y().scale(&rational::int(a as i64));
    let mut acc = MPoly::zero();
    for k in 0..=n {
        let c = binom(n, k) * wpow(a, k) * wpow(b, n - k);
        let t = &euler_poly(m - 1, n - k, &ay, &sb) * &shifted_alt_sum(a, b, k, m);
        acc += &t.scale(&c);
    }
    acc
}

/// aⁿ Σ_{i<a} (−1)ⁱ 𝓔ₙ(bx + (b/a)i | λ/a).
pub fn cor5_side(a: u32, b: u32, n: u32) -> MPoly {
    shifted_alt_sum(a, b, n, 1).scale(&wpow(a, n))
}

/// Both sides of 𝓔ₙ(w₁x|λ) = Σⱼ C(n,j) w₁^{n−j} 𝓔_{n−j}(x|λ/w₁) S̃ⱼ(w₁−1|λ).
pub fn cor3_sides(w1: u32, n: u32) -> (MPoly, MPoly) {
    let one = Rational::one();
    let lhs = euler_poly(1, n, &MPoly::x().scale(&rational::int(w1 as i64)), &one);
    let mut rhs = MPoly::zero();
    for j in 0..=n {
        let t = &euler_poly(1, n - j, &MPoly::x(), &inv(w1)) * &alt_sum(j, w1 - 1, &one);
        rhs += &t.scale(&(binom(n, j) * wpow(w1, n - j)));
    }
    (lhs, rhs)
}

/// Both sides of w₁ⁿ Σ_{i<w₁} (−1)ⁱ 𝓔ₙ(x + i/w₁ | λ/w₁) = 𝓔ₙ(w₁x|λ).
pub fn mult_formula_sides(w1: u32, n: u32) -> (MPoly, MPoly) {
    let s = inv(w1);
    let mut lhs = MPoly::zero();
    for i in 0..w1 {
        let u = &MPoly::x() + &MPoly::constant(rational::frac(i as i64, w1 as i64));
        let t = euler_poly(1, n, &u, &s);
        if i % 2 == 0 {
            lhs += &t;
        } else {
            lhs -= &t;
        }
    }
    let lhs = lhs.scale(&wpow(w1, n));
    let rhs = euler_poly(1, n, &MPoly::x().scale(&rational::int(w1 as i64)), &Rational::one());
    (lhs, rhs)
}

/// Both sides of 𝓔ₘ(n|λ) + (−1)^{n−1}𝓔ₘ(λ) = 2 Σ_{l<n} (−1)^{n−1−l} (l|λ)ₘ.
pub fn eq13_sides(n: u32, m: u32) -> (MPoly, MPoly) {
    let one = Rational::one();
    let number = euler_numbers(1, m, Method::Recurrence).numbers[m as usize].clone();
    let lhs = &euler_poly(1, m, &MPoly::from_int(n as i64), &one)
        + &number.scale(&rational::int(rational::alt_sign(n - 1)));
    let mut rhs = MPoly::zero();
    for l in 0..n {
        let f = falling(&MPoly::from_int(l as i64), &one, m);
        rhs += &f.scale(&rational::int(2 * rational::alt_sign(n - 1 - l)));
    }
    (lhs, rhs)
}

/// Both sides of (Aₙ + 1) = (A₁ + 1)·Σₖ S̃ₖ(n−1|λ) tᵏ/k!, with A_w = (1+λt)^{w/λ}.
pub fn eq17_sides(n: u32, order: u32) -> (TSeries, TSeries) {
    let order = order as usize;
    let one = Rational::one();
    let a = |w: u32| &TSeries::degen_exp(&MPoly::from_int(w as i64), &one, order) + &TSeries::one(order);
    let sums = TSeries::from_fn(order, |k| {
        alt_sum(k as u32, n - 1, &one).scale(&Rational::new(One::one(), rational::factorial(k as u32)))
    });
    (a(n), &a(1) * &sums)
}

/// 2 Σ_{l<n} (−1)ˡ (1+λt)^{l/λ}, the middle member of the quotient identity.
pub fn eq17_alternating_exponentials(n: u32, order: u32) -> TSeries {
    let order = order as usize;
    let mut acc = TSeries::zero(order);
    for l in 0..n {
        let e = TSeries::degen_exp(&MPoly::from_int(l as i64), &Rational::one(), order)
            .scale(&rational::int(2 * rational::alt_sign(l)));
        acc = &acc + &e;
    }
    acc
}

/// K⁽ᵐ⁾(w₁,w₂|λ) assembled factor by factor from degenerate exponentials,
/// reciprocals and powers.
pub fn build_kernel(w1: u32, w2: u32, m: u32, order: u32) -> Result<TSeries, IdentityError> {
    let order = order as usize;
    let one = Rational::one();
    let a = |w: u32| {
        &TSeries::degen_exp(&MPoly::from_int(w as i64), &one, order) + &TSeries::one(order)
    };
    let euler_factor = |w: u32| -> Result<TSeries, SeriesError> {
        Ok(a(w).recip()?.scale(&rational::int(2)).pow(m))
    };
    let w12 = rational::int((w1 * w2) as i64);
    // λ-only factors first; x and y enter last to keep intermediate terms small
    let scalar = &(&euler_factor(w1)? * &euler_factor(w2)?) * &a(w1 * w2).scale(&rational::frac(1, 2));
    let ex = TSeries::degen_exp(&MPoly::x().scale(&w12), &one, order);
    let ey = TSeries::degen_exp(&MPoly::y().scale(&w12), &one, order);
    Ok(&(&scalar * &ex) * &ey)
}

/// Which closed form a kernel coefficient is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelExpansion {
    /// Alternating power sums of (w₁−1), i.e. the left side of `thm1`.
    AltSum,
    /// The same with w₁ and w₂ exchanged (right side of `thm1`).
    AltSumSwapped,
    /// Alternating sums over shifted arguments, the left side of `thm4`.
    Shifted,
    /// Right side of `thm4`.
    ShiftedSwapped,
}

impl KernelExpansion {
    pub const ALL: [KernelExpansion; 4] = [
        KernelExpansion::AltSum,
        KernelExpansion::AltSumSwapped,
        KernelExpansion::Shifted,
        KernelExpansion::ShiftedSwapped,
    ];

    pub fn label(self) -> &'static str {
        match self {
            KernelExpansion::AltSum => "alt-sum expansion",
            KernelExpansion::AltSumSwapped => "alt-sum expansion (w1, w2 swapped)",
            KernelExpansion::Shifted => "shifted-argument expansion",
            KernelExpansion::ShiftedSwapped => "shifted-argument expansion (w1, w2 swapped)",
        }
    }

    fn coefficient(self, w1: u32, w2: u32, n: u32, m: u32) -> MPoly {
        match self {
            KernelExpansion::AltSum => thm1_side(w1, w2, n, m),
            KernelExpansion::AltSumSwapped => thm1_side(w2, w1, n, m),
            KernelExpansion::Shifted => thm4_side(w1, w2, n, m),
            KernelExpansion::ShiftedSwapped => thm4_side(w2, w1, n, m),
        }
    }
}

/// Symmetry of the kernel plus agreement with its four closed-form expansions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelCheck {
    pub symmetry: VerificationReport,
    pub expansions: Vec<VerificationReport>,
}

impl KernelCheck {
    pub fn all_equal(&self) -> bool {
        self.symmetry.equal && self.expansions.iter().all(|r| r.equal)
    }

    pub fn into_reports(self) -> Vec<VerificationReport> {
        std::iter::once(self.symmetry).chain(self.expansions).collect()
    }
}

pub fn verify_kernel_sym_with(
    w1: u32,
    w2: u32,
    m: u32,
    order: u32,
    opts: VerifyOptions,
) -> Result<KernelCheck, IdentityError> {
    odd("w1", w1, opts)?;
    odd("w2", w2, opts)?;
    positive("m", m)?;
    let params = IdentityParams::kernel_sym(w1, w2, m, order);
    let start = Instant::now();
    let k12 = build_kernel(w1, w2, m, order)?;
    let k21 = build_kernel(w2, w1, m, order)?;
    let mut symmetry = VerificationReport::new(
        IdentityId::KernelSym,
        params.clone(),
        Side::Series(k12.clone()),
        Side::Series(k21),
        start,
    );
    symmetry.detail = Some("K(w1,w2) = K(w2,w1)".into());
    let expansions = KernelExpansion::ALL
        .iter()
        .map(|form| {
            let start = Instant::now();
            let closed = TSeries::from_fn(order as usize, |n| {
                form.coefficient(w1, w2, n as u32, m)
                    .scale(&Rational::new(One::one(), rational::factorial(n as u32)))
            });
            let mut r = VerificationReport::new(
                IdentityId::KernelSym,
                params.clone(),
                Side::Series(k12.clone()),
                Side::Series(closed),
                start,
            );
            r.detail = Some(form.label().into());
            r
        })
        .collect();
    Ok(KernelCheck {
        symmetry,
        expansions,
    })
}

pub fn verify_kernel_sym(w1: u32, w2: u32, m: u32, order: u32) -> Result<KernelCheck, IdentityError> {
    verify_kernel_sym_with(w1, w2, m, order, VerifyOptions::default())
}

/// Verifies one identity instance. `kernel-sym` yields five reports (symmetry
/// and the four expansions); every other identity yields one.
pub fn verify(params: &IdentityParams, opts: VerifyOptions) -> Result<Vec<VerificationReport>, IdentityError> {
    let id = params.identity.ok_or_else(|| IdentityError::InvalidParameter("no identity given".into()))?;
    let start = Instant::now();
    let w1 = || params.need("w1", params.w1);
    let w2 = || params.need("w2", params.w2);
    let n = || params.need("n", params.n);
    let m = || params.need("m", params.m);
    let order = || params.need("order", params.order);
    let poly = |lhs: MPoly, rhs: MPoly, label: IdentityId| {
        vec![VerificationReport::new(label, params.clone(), Side::Poly(lhs), Side::Poly(rhs), start)]
    };
    Ok(match id {
        IdentityId::Thm1 => {
            let (a, b, n, m) = (odd("w1", w1()?, opts)?, odd("w2", w2()?, opts)?, n()?, positive("m", m()?)?);
            poly(thm1_side(a, b, n, m), thm1_side(b, a, n, m), id)
        }
        IdentityId::Thm2 => {
            let (a, b, n) = (odd("w1", w1()?, opts)?, odd("w2", w2()?, opts)?, n()?);
            poly(thm2_side(a, b, n), thm2_side(b, a, n), id)
        }
        IdentityId::Cor3 => {
            let (lhs, rhs) = cor3_sides(odd("w1", w1()?, opts)?, n()?);
            poly(lhs, rhs, id)
        }
        IdentityId::Thm4 => {
            let (a, b, n, m) = (odd("w1", w1()?, opts)?, odd("w2", w2()?, opts)?, n()?, positive("m", m()?)?);
            poly(thm4_side(a, b, n, m), thm4_side(b, a, n, m), id)
        }
        IdentityId::Cor5 => {
            let (a, b, n) = (odd("w1", w1()?, opts)?, odd("w2", w2()?, opts)?, n()?);
            poly(cor5_side(a, b, n), cor5_side(b, a, n), id)
        }
        IdentityId::MultFormula => {
            let (lhs, rhs) = mult_formula_sides(odd("w1", w1()?, opts)?, n()?);
            poly(lhs, rhs, id)
        }
        IdentityId::Eq13 | IdentityId::Eq14 => {
            let n = positive("n", n()?)?;
            if id == IdentityId::Eq14 {
                odd("n", n, opts)?;
            }
            let label = if n % 2 == 1 { IdentityId::Eq14 } else { IdentityId::Eq13 };
            let (lhs, rhs) = eq13_sides(n, m()?);
            poly(lhs, rhs, label)
        }
        IdentityId::Eq17 => {
            let n = odd("n", n()?, opts)?;
            let (lhs, rhs) = eq17_sides(n, order()?);
            vec![VerificationReport::new(id, params.clone(), Side::Series(lhs), Side::Series(rhs), start)]
        }
        IdentityId::KernelSym => verify_kernel_sym_with(w1()?, w2()?, m()?, order()?, opts)?.into_reports(),
    })
}

pub fn verify_thm1(w1: u32, w2: u32, n: u32, m: u32) -> Result<VerificationReport, IdentityError> {
    single(IdentityParams::thm1(w1, w2, n, m))
}

pub fn verify_thm2(w1: u32, w2: u32, n: u32) -> Result<VerificationReport, IdentityError> {
    single(IdentityParams::thm2(w1, w2, n))
}

pub fn verify_cor3(w1: u32, n: u32) -> Result<VerificationReport, IdentityError> {
    single(IdentityParams::cor3(w1, n))
}

pub fn verify_thm4(w1: u32, w2: u32, n: u32, m: u32) -> Result<VerificationReport, IdentityError> {
    single(IdentityParams::thm4(w1, w2, n, m))
}

pub fn verify_cor5(w1: u32, w2: u32, n: u32) -> Result<VerificationReport, IdentityError> {
    single(IdentityParams::cor5(w1, w2, n))
}

pub fn verify_multformula(w1: u32, n: u32) -> Result<VerificationReport, IdentityError> {
    single(IdentityParams::mult_formula(w1, n))
}

pub fn verify_eq13(n: u32, m: u32) -> Result<VerificationReport, IdentityError> {
    single(IdentityParams::eq13(n, m))
}

pub fn verify_eq17(n: u32, order: u32) -> Result<VerificationReport, IdentityError> {
    single(IdentityParams::eq17(n, order))
}

fn single(p: IdentityParams) -> Result<VerificationReport, IdentityError> {
    Ok(verify(&p, VerifyOptions::default())?.remove(0))
}

/// The default parameter grid for an identity.
pub fn default_grid(id: IdentityId) -> Vec<IdentityParams> {
    const W4: [u32; 4] = [1, 3, 5, 7];
    const W5: [u32; 5] = [1, 3, 5, 7, 9];
    let mut out = Vec::new();
    match id {
        IdentityId::Thm1 | IdentityId::Thm4 => {
            for w1 in W4 {
                for w2 in W4 {
                    for n in 0..=8 {
                        for m in 1..=3 {
                            out.push(if id == IdentityId::Thm1 {
                                IdentityParams::thm1(w1, w2, n, m)
                            } else {
                                IdentityParams::thm4(w1, w2, n, m)
                            });
                        }
                    }
                }
            }
        }
        IdentityId::Thm2 | IdentityId::Cor5 => {
            for w1 in W5 {
                for w2 in W5 {
                    for n in 0..=10 {
                        out.push(if id == IdentityId::Thm2 {
                            IdentityParams::thm2(w1, w2, n)
                        } else {
                            IdentityParams::cor5(w1, w2, n)
                        });
                    }
                }
            }
        }
        IdentityId::Cor3 | IdentityId::MultFormula => {
            for w1 in W5 {
                for n in 0..=10 {
                    out.push(if id == IdentityId::Cor3 {
                        IdentityParams::cor3(w1, n)
                    } else {
                        IdentityParams::mult_formula(w1, n)
                    });
                }
            }
        }
        IdentityId::Eq13 => {
            for n in 1..=9 {
                for m in 0..=10 {
                    out.push(IdentityParams::eq13(n, m));
                }
            }
        }
        IdentityId::Eq14 => {
            for n in (1..=9).step_by(2) {
                for m in 0..=10 {
                    out.push(IdentityParams::eq14(n, m));
                }
            }
        }
        IdentityId::Eq17 => {
            for n in [1, 3, 5, 7] {
                out.push(IdentityParams::eq17(n, 8));
            }
        }
        IdentityId::KernelSym => {
            for w1 in W4 {
                for w2 in W4 {
                    for m in 1..=3 {
                        out.push(IdentityParams::kernel_sym(w1, w2, m, 6));
                    }
                }
            }
        }
    }
    out
}

/// Verifies every tuple in parallel; results come back in input order.
pub fn verify_grid(
    grid: &[IdentityParams],
    opts: VerifyOptions,
) -> Vec<Result<Vec<VerificationReport>, IdentityError>> {
    grid.par_iter().map(|p| verify(p, opts)).collect()
}

fn statement_latex(id: IdentityId, p: &IdentityParams) -> String {
    let g = |v: Option<u32>| v.map(|v| v.to_string()).unwrap_or_else(|| "?".into());
    let (w1, w2, n, m) = (g(p.w1), g(p.w2), g(p.n), g(p.m));
    match id {
        IdentityId::Thm1 => format!(
            "\\sum_{{j=0}}^{{{n}}}\\binom{{{n}}}{{j}}{w2}^{{j}}{w1}^{{{n}-j}}\\mathcal{{E}}_{{{n}-j}}^{{({m})}}\\left({w2}x\\,\\middle|\\,\\tfrac{{\\lambda}}{{{w1}}}\\right)\\sum_{{k=0}}^{{j}}\\tilde{{S}}_{{k}}\\left({w1}-1\\,\\middle|\\,\\tfrac{{\\lambda}}{{{w2}}}\\right)\\binom{{j}}{{k}}\\mathcal{{E}}_{{j-k}}^{{({m}-1)}}\\left({w1}y\\,\\middle|\\,\\tfrac{{\\lambda}}{{{w2}}}\\right) \\;=\\; (w_1 \\leftrightarrow w_2)"
        ),
        IdentityId::Thm2 => format!(
            "\\sum_{{j=0}}^{{{n}}}\\binom{{{n}}}{{j}}{w2}^{{j}}{w1}^{{{n}-j}}\\mathcal{{E}}_{{{n}-j}}\\left({w2}x\\,\\middle|\\,\\tfrac{{\\lambda}}{{{w1}}}\\right)\\tilde{{S}}_{{j}}\\left({w1}-1\\,\\middle|\\,\\tfrac{{\\lambda}}{{{w2}}}\\right) \\;=\\; (w_1 \\leftrightarrow w_2)"
        ),
        IdentityId::Cor3 => format!(
            "\\mathcal{{E}}_{{{n}}}({w1}x\\mid\\lambda) = \\sum_{{j=0}}^{{{n}}}\\binom{{{n}}}{{j}}{w1}^{{{n}-j}}\\mathcal{{E}}_{{{n}-j}}\\left(x\\,\\middle|\\,\\tfrac{{\\lambda}}{{{w1}}}\\right)\\tilde{{S}}_{{j}}({w1}-1\\mid\\lambda)"
        ),
        IdentityId::Thm4 => format!(
            "\\sum_{{k=0}}^{{{n}}}\\binom{{{n}}}{{k}}{w1}^{{k}}{w2}^{{{n}-k}}\\mathcal{{E}}_{{{n}-k}}^{{({m}-1)}}\\left({w1}y\\,\\middle|\\,\\tfrac{{\\lambda}}{{{w2}}}\\right)\\sum_{{i=0}}^{{{w1}-1}}(-1)^{{i}}\\mathcal{{E}}_{{k}}^{{({m})}}\\left({w2}x+\\tfrac{{{w2}}}{{{w1}}}i\\,\\middle|\\,\\tfrac{{\\lambda}}{{{w1}}}\\right) \\;=\\; (w_1 \\leftrightarrow w_2)"
        ),
        IdentityId::Cor5 => format!(
            "{w1}^{{{n}}}\\sum_{{i=0}}^{{{w1}-1}}(-1)^{{i}}\\mathcal{{E}}_{{{n}}}\\left({w2}x+\\tfrac{{{w2}}}{{{w1}}}i\\,\\middle|\\,\\tfrac{{\\lambda}}{{{w1}}}\\right) = {w2}^{{{n}}}\\sum_{{i=0}}^{{{w2}-1}}(-1)^{{i}}\\mathcal{{E}}_{{{n}}}\\left({w1}x+\\tfrac{{{w1}}}{{{w2}}}i\\,\\middle|\\,\\tfrac{{\\lambda}}{{{w2}}}\\right)"
        ),
        IdentityId::MultFormula => format!(
            "{w1}^{{{n}}}\\sum_{{i=0}}^{{{w1}-1}}(-1)^{{i}}\\mathcal{{E}}_{{{n}}}\\left(x+\\tfrac{{i}}{{{w1}}}\\,\\middle|\\,\\tfrac{{\\lambda}}{{{w1}}}\\right) = \\mathcal{{E}}_{{{n}}}({w1}x\\mid\\lambda)"
        ),
        IdentityId::Eq13 | IdentityId::Eq14 => format!(
            "\\mathcal{{E}}_{{{m}}}({n}\\mid\\lambda) + (-1)^{{{n}-1}}\\mathcal{{E}}_{{{m}}}(\\lambda) = 2\\sum_{{l=0}}^{{{n}-1}}(-1)^{{{n}-1-l}}(l\\mid\\lambda)_{{{m}}}"
        ),
        IdentityId::Eq17 => format!(
            "(1+\\lambda t)^{{{n}/\\lambda}} + 1 = \\left((1+\\lambda t)^{{1/\\lambda}} + 1\\right)\\sum_{{k\\ge0}}\\tilde{{S}}_{{k}}({n}-1\\mid\\lambda)\\frac{{t^{{k}}}}{{k!}}"
        ),
        IdentityId::KernelSym => format!(
            "K^{{({m})}}({w1},{w2}\\mid\\lambda) = K^{{({m})}}({w2},{w1}\\mid\\lambda)"
        ),
    }
}
