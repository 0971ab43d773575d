//! Degenerate falling factorials, Stirling numbers of the first kind,
//! higher-order degenerate Euler numbers and polynomials, and alternating
//! degenerate power sums.
//!
//! Euler numbers of order r are the coefficients 𝓔ₙ^{(r)}(λ) of
//!
//! ```text
//!   ( 2 / ((1+λt)^{1/λ} + 1) )^r  =  Σ 𝓔ₙ^{(r)}(λ) tⁿ/n!
//! ```
//!
//! and the polynomials follow from the binomial decomposition
//! 𝓔ₙ^{(r)}(u|λ) = Σₖ C(n,k) 𝓔ₖ^{(r)}(λ) (u|λ)_{n−k}. Order 0 is the bare
//! degenerate exponential, so 𝓔ₙ^{(0)}(u|λ) = (u|λ)ₙ.
//!
//! Arguments written `(u | sλ)` in this module mean λ is rescaled by the
//! rational `s`; the λ/w arguments of the symmetric identities use s = 1/w.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{Exponents, MPoly, Var};
use crate::rational::{self, Rational};
use crate::series::TSeries;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequenceError {
    #[error("index out of range: S1({n}, {l}) needs l <= n")]
    IndexOutOfRange { n: u32, l: u32 },
}

/// Which construction produced an Euler number family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Coefficient extraction from the r-th power of the reciprocal-built kernel series.
    Series,
    /// The first-order recurrence followed by binomial convolution in the order.
    Recurrence,
}

/// 𝓔₀^{(r)}(λ), …, 𝓔_N^{(r)}(λ) as polynomials in λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerFamily {
    pub order: u32,
    pub max_index: u32,
    pub numbers: Vec<MPoly>,
    pub method: Method,
}

/// (u | sλ)ₙ = u(u − sλ)(u − 2sλ)⋯(u − (n−1)sλ); the empty product is 1.
pub fn falling(u: &MPoly, s: &Rational, n: u32) -> MPoly {
    let step = MPoly::lambda().scale(s);
    let mut acc = MPoly::one();
    let mut factor = u.clone();
    for _ in 0..n {
        acc = &acc * &factor;
        factor -= &step;
    }
    acc
}

fn stirling_rows() -> &'static RwLock<Vec<Vec<BigInt>>> {
    static ROWS: OnceLock<RwLock<Vec<Vec<BigInt>>>> = OnceLock::new();
    ROWS.get_or_init(|| RwLock::new(vec![vec![BigInt::one()]]))
}

fn stirling_row(n: u32) -> Vec<BigInt> {
    let n = n as usize;
    if let Some(row) = stirling_rows().read().unwrap().get(n) {
        return row.clone();
    }
    let mut rows = stirling_rows().write().unwrap();
    while rows.len() <= n {
        // S1(m+1, l) = S1(m, l−1) − m·S1(m, l)
        let m = rows.len() - 1;
        let prev = &rows[m];
        let mut next = vec![BigInt::zero(); m + 2];
        for (l, slot) in next.iter_mut().enumerate() {
            if l >= 1 {
                *slot += &prev[l - 1];
            }
            if l <= m {
                *slot -= BigInt::from(m) * &prev[l];
            }
        }
        rows.push(next);
    }
    rows[n].clone()
}

/// Signed Stirling number of the first kind, from the triangular recurrence.
pub fn stirling1(n: u32, l: u32) -> Result<BigInt, SequenceError> {
    if l > n {
        return Err(SequenceError::IndexOutOfRange { n, l });
    }
    Ok(stirling_row(n)[l as usize].clone())
}

/// S₁(n, l) read off as the coefficient of λ^{n−l} xˡ in (x|λ)ₙ.
pub fn stirling1_from_falling(n: u32, l: u32) -> Result<BigInt, SequenceError> {
    if l > n {
        return Err(SequenceError::IndexOutOfRange { n, l });
    }
    let c = falling(&MPoly::x(), &Rational::one(), n).coeff(Exponents([l, 0, n - l]));
    debug_assert!(c.is_integer());
    Ok(c.to_integer())
}

/// Σₗ S₁(n,l) λ^{n−l} xˡ.
pub fn stirling_expand(n: u32) -> MPoly {
    MPoly::from_terms(
        stirling_row(n)
            .into_iter()
            .enumerate()
            .map(|(l, c)| (Exponents([l as u32, 0, n - l as u32]), Rational::from_integer(c))),
    )
}

fn binomial_convolution(a: &[MPoly], b: &[MPoly], n: usize) -> MPoly {
    let mut acc = MPoly::zero();
    for k in 0..=n {
        let t = &a[k] * &b[n - k];
        acc += &t.scale_int(&rational::binomial(n as u32, k as u32));
    }
    acc
}

type NumberCache = RwLock<HashMap<u32, Arc<Vec<MPoly>>>>;

fn number_cache() -> &'static NumberCache {
    static CACHE: OnceLock<NumberCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// First-order numbers from Σₖ C(n,k) 𝓔ₖ (1|λ)_{n−k} + 𝓔ₙ = 2δ_{n,0}.
fn first_order_by_recurrence(max: u32) -> Vec<MPoly> {
    let one = Rational::one();
    let falls: Vec<MPoly> = (0..=max).map(|k| falling(&MPoly::one(), &one, k)).collect();
    let half = rational::frac(1, 2);
    let mut e: Vec<MPoly> = Vec::with_capacity(max as usize + 1);
    for n in 0..=max {
        let mut rhs = if n == 0 { MPoly::from_int(2) } else { MPoly::zero() };
        for k in 0..n {
            let t = &e[k as usize] * &falls[(n - k) as usize];
            rhs -= &t.scale_int(&rational::binomial(n, k));
        }
        // the k = n term contributes 𝓔ₙ·(1|λ)₀ = 𝓔ₙ, doubling it
        e.push(rhs.scale(&half));
    }
    e
}

fn recurrence_numbers(r: u32, max: u32) -> Arc<Vec<MPoly>> {
    if let Some(v) = number_cache().read().unwrap().get(&r) {
        if v.len() > max as usize {
            return v.clone();
        }
    }
    let n = max as usize;
    let computed = if r == 0 {
        let mut v = vec![MPoly::zero(); n + 1];
        v[0] = MPoly::one();
        v
    } else {
        let first = first_order_by_recurrence(max);
        let mut cur = first.clone();
        for _ in 1..r {
            cur = (0..=n).map(|k| binomial_convolution(&cur, &first, k)).collect();
        }
        cur
    };
    let computed = Arc::new(computed);
    let mut cache = number_cache().write().unwrap();
    let slot = cache.entry(r).or_insert_with(|| computed.clone());
    if slot.len() < computed.len() {
        *slot = computed.clone();
    }
    slot.clone()
}

/// The series 2/((1+λt)^{1/λ} + 1) to the given order.
pub fn euler_kernel(order: usize) -> TSeries {
    let denom = &TSeries::degen_exp(&MPoly::one(), &Rational::one(), order) + &TSeries::one(order);
    denom
        .recip()
        .expect("constant term of (1+λt)^{1/λ} + 1 is 2")
        .scale(&rational::int(2))
}

/// 𝓔₀^{(r)}(λ)..𝓔_N^{(r)}(λ) by the chosen construction.
pub fn euler_numbers(r: u32, max: u32, method: Method) -> EulerFamily {
    let numbers = match method {
        Method::Recurrence => recurrence_numbers(r, max)[..=max as usize].to_vec(),
        Method::Series => {
            let gf = euler_kernel(max as usize).pow(r);
            (0..=max as usize).map(|n| gf.egf_coeff(n)).collect()
        }
    };
    EulerFamily {
        order: r,
        max_index: max,
        numbers,
        method,
    }
}

/// 𝓔ₙ^{(r)}(sλ) for n ≤ max, from the memoized recurrence family.
pub fn euler_numbers_scaled(r: u32, max: u32, s: &Rational) -> Vec<MPoly> {
    recurrence_numbers(r, max)[..=max as usize]
        .iter()
        .map(|e| e.rescale_var(Var::Lambda, s))
        .collect()
}

/// 𝓔ₙ^{(r)}(u | sλ) = Σₖ C(n,k) 𝓔ₖ^{(r)}(sλ) (u|sλ)_{n−k}.
pub fn euler_poly(r: u32, n: u32, u: &MPoly, s: &Rational) -> MPoly {
    let numbers = euler_numbers_scaled(r, n, s);
    let mut acc = MPoly::zero();
    let mut fall = MPoly::one();
    let step = MPoly::lambda().scale(s);
    let mut factor = u.clone();
    // j = n − k runs upward so the falling factorial is built incrementally
    for j in 0..=n {
        let k = n - j;
        if !numbers[k as usize].is_zero() {
            let t = &numbers[k as usize] * &fall;
            acc += &t.scale_int(&rational::binomial(n, k));
        }
        fall = &fall * &factor;
        factor -= &step;
    }
    acc
}

/// S̃ₖ(n | sλ) = Σ_{l=0}^{n} (−1)ˡ (l | sλ)ₖ.
pub fn alt_sum(k: u32, n: u32, s: &Rational) -> MPoly {
    let mut acc = MPoly::zero();
    for l in 0..=n {
        let t = falling(&MPoly::from_int(l as i64), s, k);
        if l % 2 == 0 {
            acc += &t;
        } else {
            acc -= &t;
        }
    }
    acc
}

/// Table of S̃ₖ(n|λ) for k ≤ max_k, n ≤ max_n, built by the prefix recurrence
/// S̃ₖ(n|λ) = S̃ₖ(n−1|λ) + (−1)ⁿ(n|λ)ₖ. Indexed `[k][n]`.
pub fn alt_sum_table(max_k: u32, max_n: u32, s: &Rational) -> Vec<Vec<MPoly>> {
    (0..=max_k)
        .map(|k| {
            let mut row = Vec::with_capacity(max_n as usize + 1);
            let mut acc = MPoly::zero();
            for n in 0..=max_n {
                let t = falling(&MPoly::from_int(n as i64), s, k);
                if n % 2 == 0 {
                    acc += &t;
                } else {
                    acc -= &t;
                }
                row.push(acc.clone());
            }
            row
        })
        .collect()
}

/// λ ↦ 0.
pub fn classical_limit(p: &MPoly) -> MPoly {
    p.subst(Var::Lambda, &MPoly::zero())
}

/// Classical Euler numbers from Σₖ C(n,k)Eₖ + Eₙ = 2δ_{n,0}.
pub fn classical_euler_numbers(max: u32) -> Vec<Rational> {
    let mut e: Vec<Rational> = Vec::with_capacity(max as usize + 1);
    for n in 0..=max {
        let mut rhs = if n == 0 { rational::int(2) } else { Rational::zero() };
        for k in 0..n {
            rhs -= &e[k as usize] * Rational::from_integer(rational::binomial(n, k));
        }
        e.push(rhs / rational::int(2));
    }
    e
}

/// Classical Eₙ(x) = Σₖ C(n,k) Eₖ x^{n−k}.
pub fn classical_euler_poly(n: u32) -> MPoly {
    let e = classical_euler_numbers(n);
    MPoly::from_terms((0..=n).map(|k| {
        (
            Exponents([n - k, 0, 0]),
            &e[k as usize] * Rational::from_integer(rational::binomial(n, k)),
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn falling_factorials() {
        let x = MPoly::x();
        assert_eq!(falling(&x, &int(1), 0), MPoly::one());
        assert_eq!(falling(&x, &int(1), 2), p("x^2 - L x"));
        let v = falling(&MPoly::from_int(3), &int(1), 3);
        assert_eq!(v.eval(&int(0), &int(0), &int(2)), int(-3));
        assert_eq!(falling(&MPoly::zero(), &int(1), 3), MPoly::zero());
    }

    #[test]
    fn stirling_values() {
        for n in 0..8 {
            assert_eq!(stirling1(n, n).unwrap(), BigInt::one());
        }
        assert_eq!(stirling1(3, 1).unwrap(), BigInt::from(2));
        assert_eq!(stirling1(3, 2).unwrap(), BigInt::from(-3));
        assert_eq!(stirling1(4, 2).unwrap(), BigInt::from(11));
        assert_eq!(stirling1(4, 0).unwrap(), BigInt::zero());
        assert_eq!(
            stirling1(2, 3),
            Err(SequenceError::IndexOutOfRange { n: 2, l: 3 })
        );
        assert!(stirling1_from_falling(2, 3).is_err());
    }

    #[test]
    fn stirling_expansion() {
        assert_eq!(stirling_expand(0), MPoly::one());
        assert_eq!(stirling_expand(2), p("x^2 - L x"));
        assert_eq!(stirling_expand(3), p("x^3 - 3 L x^2 + 2 L^2 x"));
        for n in 0..=20 {
            assert_eq!(stirling_expand(n), falling(&MPoly::x(), &int(1), n));
        }
    }

    #[test]
    fn euler_number_examples() {
        let e = euler_numbers(1, 2, Method::Recurrence).numbers;
        assert_eq!(e, vec![MPoly::one(), p("-1/2"), p("L/2")]);
        let e2 = euler_numbers(2, 1, Method::Series).numbers;
        assert_eq!(e2[1], p("-1"));
        assert_eq!(euler_numbers(0, 3, Method::Series).numbers, vec![
            MPoly::one(),
            MPoly::zero(),
            MPoly::zero(),
            MPoly::zero()
        ]);
    }

    #[test]
    fn methods_agree() {
        for r in 0..=4 {
            assert_eq!(
                euler_numbers(r, 12, Method::Series).numbers,
                euler_numbers(r, 12, Method::Recurrence).numbers,
                "order {r}"
            );
        }
    }

    #[test]
    fn euler_poly_examples() {
        let x = MPoly::x();
        assert_eq!(euler_poly(1, 1, &x, &int(1)), p("x - 1/2"));
        assert_eq!(euler_poly(1, 2, &x, &int(1)), p("x^2 - (1 + L) x + L/2"));
        assert_eq!(euler_poly(0, 3, &x, &int(1)), falling(&x, &int(1), 3));
        for n in 0..=8 {
            assert_eq!(
                classical_limit(&euler_poly(1, n, &x, &int(1))),
                classical_euler_poly(n)
            );
        }
    }

    #[test]
    fn euler_poly_shape() {
        for r in 1..=3 {
            for n in 0..=6 {
                let e = euler_poly(r, n, &MPoly::x(), &int(1));
                assert_eq!(e.degree_in(Var::X).unwrap_or(0), n);
                assert_eq!(e.coeff(Exponents([n, 0, 0])), int(1));
            }
        }
    }

    #[test]
    fn alt_sums() {
        for k in 0..4 {
            let expect = if k == 0 { MPoly::one() } else { MPoly::zero() };
            assert_eq!(alt_sum(k, 0, &int(1)), expect);
        }
        assert_eq!(alt_sum(1, 2, &int(1)), MPoly::one());
        assert_eq!(alt_sum(2, 2, &int(1)), p("3 - L"));
        assert_eq!(classical_limit(&alt_sum(2, 2, &int(1))), MPoly::from_int(3));
        let table = alt_sum_table(5, 6, &frac(1, 3));
        for k in 0..=5 {
            for n in 0..=6 {
                assert_eq!(table[k as usize][n as usize], alt_sum(k, n, &frac(1, 3)));
            }
        }
    }

    #[test]
    fn alt_sum_classical_limit() {
        for k in 0..6u32 {
            for n in 0..6u32 {
                let plain: i64 = (0..=n as i64)
                    .map(|l| rational::alt_sign(l as u32) * l.pow(k))
                    .sum();
                assert_eq!(classical_limit(&alt_sum(k, n, &int(1))), MPoly::from_int(plain));
            }
        }
    }

    #[test]
    fn classical_numbers() {
        let e = classical_euler_numbers(3);
        assert_eq!(e, vec![int(1), frac(-1, 2), int(0), frac(1, 4)]);
        assert_eq!(classical_euler_poly(2), p("x^2 - x"));
        assert_eq!(classical_limit(&MPoly::from_int(7)), MPoly::from_int(7));
    }

    #[test]
    fn boundary_identity_for_all_shifts() {
        // 𝓔ₘ(n|λ) + (−1)^{n−1}𝓔ₘ(λ) = 2 Σ_{l<n} (−1)^{n−1−l} (l|λ)ₘ
        for n in 1..=6u32 {
            for m in 0..=8u32 {
                let lhs = &euler_poly(1, m, &MPoly::from_int(n as i64), &int(1))
                    + &euler_numbers(1, m, Method::Recurrence).numbers[m as usize]
                        .scale(&int(rational::alt_sign(n - 1)));
                let mut rhs = MPoly::zero();
                for l in 0..n {
                    rhs += &falling(&MPoly::from_int(l as i64), &int(1), m)
                        .scale(&int(2 * rational::alt_sign(n - 1 - l)));
                }
                assert_eq!(lhs, rhs, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn addition_law_and_order_convolution() {
        let (x, y) = (MPoly::x(), MPoly::y());
        for r in 0..=3 {
            for n in 0..=5 {
                let lhs = euler_poly(r, n, &(&x + &y), &int(1));
                let mut rhs = MPoly::zero();
                for k in 0..=n {
                    let t = &euler_poly(r, k, &x, &int(1)) * &falling(&y, &int(1), n - k);
                    rhs += &t.scale_int(&rational::binomial(n, k));
                }
                assert_eq!(lhs, rhs);
            }
        }
        for (r, q) in [(1, 1), (1, 2), (2, 2), (0, 3)] {
            let a = euler_numbers(r, 8, Method::Series).numbers;
            let b = euler_numbers(q, 8, Method::Series).numbers;
            let c = euler_numbers(r + q, 8, Method::Recurrence).numbers;
            for (n, cn) in c.iter().enumerate() {
                assert_eq!(&binomial_convolution(&a, &b, n), cn);
            }
        }
    }

    #[test]
    fn cache_extends_on_demand() {
        let short = euler_numbers(3, 2, Method::Recurrence).numbers;
        let long = euler_numbers(3, 9, Method::Recurrence).numbers;
        assert_eq!(&long[..3], &short[..]);
        assert_eq!(long.len(), 10);
    }
}
