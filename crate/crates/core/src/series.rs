//! Truncated formal power series in t with polynomial coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::degenerate::falling;
use crate::poly::MPoly;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("constant term {0} is not a nonzero rational constant")]
    NonUnitConstantTerm(String),
}

/// Σ cₙ tⁿ for n = 0..=order. Always stores exactly `order + 1` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TSeries {
    coeffs: Vec<MPoly>,
}

impl TSeries {
    /// Takes `coeffs` as c₀..c_N; an empty vector is the order-0 zero series.
    pub fn new(mut coeffs: Vec<MPoly>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(MPoly::zero());
        }
        TSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> MPoly) -> Self {
        TSeries::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(MPoly::zero(), order)
    }

    /// The unit series 1 at the given order.
    pub fn one(order: usize) -> Self {
        Self::constant(MPoly::one(), order)
    }

    pub fn constant(c: MPoly, order: usize) -> Self {
        let mut coeffs = vec![MPoly::zero(); order + 1];
        coeffs[0] = c;
        TSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &MPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MPoly::is_zero)
    }

    pub fn truncate(&self, order: usize) -> TSeries {
        TSeries::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn map(&self, f: impl FnMut(&MPoly) -> MPoly) -> TSeries {
        TSeries::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, s: &Rational) -> TSeries {
        self.map(|c| c.scale(s))
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn recip(&self) -> Result<TSeries, SeriesError> {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| SeriesError::NonUnitConstantTerm(self.coeffs[0].to_string()))?;
        let inv0 = c0.recip();
        let neg_inv0 = -inv0.clone();
        let mut out: Vec<MPoly> = Vec::with_capacity(self.coeffs.len());
        out.push(MPoly::constant(inv0));
        for n in 1..self.coeffs.len() {
            let mut acc = MPoly::zero();
            for k in 1..=n {
                acc += &(&self.coeffs[k] * &out[n - k]);
            }
            out.push(acc.scale(&neg_inv0));
        }
        Ok(TSeries { coeffs: out })
    }

    /// r-fold product; `pow(0)` is the unit series.
    pub fn pow(&self, r: u32) -> TSeries {
        let mut acc = TSeries::one(self.order());
        for _ in 0..r {
            acc = &acc * self;
        }
        acc
    }

    /// Σₙ (u | sλ)ₙ tⁿ/n!, the expansion of (1 + λt)^{u/λ} with λ rescaled by s.
    /// With s = 0 this is the classical exponential e^{ut}.
    pub fn degen_exp(u: &MPoly, s: &Rational, order: usize) -> TSeries {
        TSeries::from_fn(order, |n| {
            let inv = Rational::new(One::one(), rational::factorial(n as u32));
            falling(u, s, n as u32).scale(&inv)
        })
    }

    /// n!·cₙ, the exponential-generating-function coefficient.
    pub fn egf_coeff(&self, n: usize) -> MPoly {
        self.coeffs[n].scale_int(&rational::factorial(n as u32))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("series serialization is infallible")
    }

    pub fn to_latex(&self) -> String {
        let mut parts = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = c.to_latex();
            let wrapped = if c.len() > 1 && n > 0 {
                format!("\\left({body}\\right)")
            } else {
                body
            };
            parts.push(match n {
                0 => wrapped,
                1 => format!("{wrapped} t"),
                _ => format!("{wrapped} t^{{{n}}}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        format!("{} + O(t^{{{}}})", parts.join(" + "), self.order() + 1)
    }
}

fn combine(a: &TSeries, b: &TSeries, f: impl Fn(&MPoly, &MPoly) -> MPoly) -> TSeries {
    let order = a.order().min(b.order());
    TSeries::from_fn(order, |n| f(&a.coeffs[n], &b.coeffs[n]))
}

impl<'a> Add<&'a TSeries> for &TSeries {
    type Output = TSeries;
    fn add(self, rhs: &'a TSeries) -> TSeries {
        combine(self, rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a TSeries> for &TSeries {
    type Output = TSeries;
    fn sub(self, rhs: &'a TSeries) -> TSeries {
        combine(self, rhs, |a, b| a - b)
    }
}

impl Neg for &TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        self.map(|c| -c)
    }
}

impl<'a> Mul<&'a TSeries> for &TSeries {
    type Output = TSeries;

    /// Cauchy product, truncated to the smaller order.
    fn mul(self, rhs: &'a TSeries) -> TSeries {
        let order = self.order().min(rhs.order());
        TSeries::from_fn(order, |n| {
            let mut acc = MPoly::zero();
            for k in 0..=n {
                let (a, b) = (&self.coeffs[k], &rhs.coeffs[n - k]);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
    }
}

impl fmt::Display for TSeries {
    /// `c0 + (c1)*t + ... + (cN)*t^N`; zero coefficients are kept so the
    /// truncation order is visible.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let body = if n > 0 { format!("({c})") } else { c.to_string() };
            match n {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}*t")?,
                _ => write!(f, "{body}*t^{n}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for TSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coeffs = Vec::<MPoly>::deserialize(d)?;
        if coeffs.is_empty() {
            return Err(serde::de::Error::custom("a series needs at least one coefficient"));
        }
        Ok(TSeries { coeffs })
    }
}
