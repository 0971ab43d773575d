//! Parameter lists and grid construction for `verify` and `padic`.

use degen_euler_core::identity::{IdentityId, IdentityParams};
use degen_euler_core::padic::Eq10Case;
use degen_euler_core::rational::{self, Rational};

/// A comma list of non-negative integers given as one flag value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct List(pub Vec<u32>);

/// A comma list of rationals given as one flag value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalList(pub Vec<Rational>);

pub fn list_arg(s: &str) -> Result<List, String> {
    parse_list(s).map(List)
}

pub fn rational_list_arg(s: &str) -> Result<RationalList, String> {
    parse_rational_list(s).map(RationalList)
}

/// Parses `1,3,5`, `0..8` (inclusive) or mixtures like `0..3,7`.
pub fn parse_list(s: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u32 = a.trim().parse().map_err(|_| format!("bad range start in {part:?}"))?;
            let b: u32 = b
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| format!("bad range end in {part:?}"))?;
            if a > b {
                return Err(format!("empty range {part:?}"));
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| format!("not a non-negative integer: {part:?}"))?);
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, String> {
    let out = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| rational::parse(p).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}

/// Optional user-supplied lists for an identity grid.
#[derive(Debug, Default, Clone)]
pub struct GridSpec {
    pub w1: Option<Vec<u32>>,
    pub w2: Option<Vec<u32>>,
    pub n: Option<Vec<u32>>,
    pub m: Option<Vec<u32>>,
    pub order: Option<Vec<u32>>,
}

const W4: &[u32] = &[1, 3, 5, 7];
const W5: &[u32] = &[1, 3, 5, 7, 9];

fn range(a: u32, b: u32) -> Vec<u32> {
    (a..=b).collect()
}

/// Cartesian product over the fields an identity uses; missing lists fall
/// back to the identity's default grid values.
pub fn build_grid(id: IdentityId, spec: &GridSpec) -> Vec<IdentityParams> {
    let pick = |given: &Option<Vec<u32>>, default: Vec<u32>| given.clone().unwrap_or(default);
    let mut out = Vec::new();
    match id {
        IdentityId::Thm1 | IdentityId::Thm4 => {
            for w1 in pick(&spec.w1, W4.to_vec()) {
                for w2 in pick(&spec.w2, W4.to_vec()) {
                    for n in pick(&spec.n, range(0, 8)) {
                        for m in pick(&spec.m, range(1, 3)) {
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
            for w1 in pick(&spec.w1, W5.to_vec()) {
                for w2 in pick(&spec.w2, W5.to_vec()) {
                    for n in pick(&spec.n, range(0, 10)) {
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
            for w1 in pick(&spec.w1, W5.to_vec()) {
                for n in pick(&spec.n, range(0, 10)) {
                    out.push(if id == IdentityId::Cor3 {
                        IdentityParams::cor3(w1, n)
                    } else {
                        IdentityParams::mult_formula(w1, n)
                    });
                }
            }
        }
        IdentityId::Eq13 | IdentityId::Eq14 => {
            let default_n = if id == IdentityId::Eq13 {
                range(1, 9)
            } else {
                vec![1, 3, 5, 7, 9]
            };
            for n in pick(&spec.n, default_n) {
                for m in pick(&spec.m, range(0, 10)) {
                    out.push(if id == IdentityId::Eq13 {
                        IdentityParams::eq13(n, m)
                    } else {
                        IdentityParams::eq14(n, m)
                    });
                }
            }
        }
        IdentityId::Eq17 => {
            for n in pick(&spec.n, vec![1, 3, 5, 7]) {
                for order in pick(&spec.order, vec![8]) {
                    out.push(IdentityParams::eq17(n, order));
                }
            }
        }
        IdentityId::KernelSym => {
            for w1 in pick(&spec.w1, W4.to_vec()) {
                for w2 in pick(&spec.w2, W4.to_vec()) {
                    for m in pick(&spec.m, range(1, 3)) {
                        for order in pick(&spec.order, vec![6]) {
                            out.push(IdentityParams::kernel_sym(w1, w2, m, order));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Identities run by `verify --all`, in output order.
pub const ALL_IDENTITIES: [IdentityId; 9] = [
    IdentityId::Thm1,
    IdentityId::Thm4,
    IdentityId::Thm2,
    IdentityId::Cor3,
    IdentityId::Cor5,
    IdentityId::MultFormula,
    IdentityId::Eq13,
    IdentityId::Eq17,
    IdentityId::KernelSym,
];

/// Optional user lists for the congruence grid.
#[derive(Debug, Default, Clone)]
pub struct PadicSpec {
    pub p: Option<Vec<u32>>,
    pub level: Option<Vec<u32>>,
    pub n: Option<Vec<u32>>,
    pub r: Option<Vec<u32>>,
    pub lambda: Option<Vec<Rational>>,
}

/// Missing lists default to the eq10 acceptance grid: p ∈ {3,5,7}, N up to
/// 4 (6 for p = 3), λ₀ ∈ {0,1,2} plus 1/3 for p ≠ 3, n ≤ 6, r ∈ {1,2}.
pub fn build_padic_grid(spec: &PadicSpec, default_n: Vec<u32>, default_r: Vec<u32>) -> Vec<Eq10Case> {
    let mut out = Vec::new();
    let ps = spec.p.clone().unwrap_or_else(|| vec![3, 5, 7]);
    for p in ps {
        let p = p as u64;
        let levels = spec
            .level
            .clone()
            .unwrap_or_else(|| range(1, if p == 3 { 6 } else { 4 }));
        let lambdas = spec.lambda.clone().unwrap_or_else(|| {
            let mut v = vec![rational::int(0), rational::int(1), rational::int(2)];
            if p != 3 {
                v.push(rational::frac(1, 3));
            }
            v
        });
        for &level in &levels {
            for lambda in &lambdas {
                for &n in spec.n.as_ref().unwrap_or(&default_n) {
                    for &vars in spec.r.as_ref().unwrap_or(&default_r) {
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
