//! Sparse polynomials in ℚ[x, y, λ].
//!
//! A polynomial is a map from exponent triples to nonzero rational
//! coefficients. Every constructor and operation returns the canonical form
//! (no zero coefficients), so equality of polynomials is structural equality
//! of the maps.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{self, Rational};

/// One of the three ring variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Lambda,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Lambda];

    fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Lambda => 2,
        }
    }

    /// Plain-text spelling; λ is written `L`.
    pub fn symbol(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Lambda => "L",
        }
    }

    fn latex(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Lambda => "\\lambda",
        }
    }
}

/// Exponents of (x, y, λ), ordered graded-lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Exponents(pub [u32; 3]);

impl Exponents {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    fn with(mut self, v: Var, e: u32) -> Self {
        self.0[v.index()] = e;
        self
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Exponents {
    type Output = Exponents;
    fn add(self, o: Exponents) -> Exponents {
        Exponents([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

/// Sparse multivariate polynomial over ℚ in x, y, λ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Exponents::default(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rational::int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Exponents::default().with(v, 1), Rational::one())
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn y() -> Self {
        Self::var(Var::Y)
    }

    pub fn lambda() -> Self {
        Self::var(Var::Lambda)
    }

    pub fn monomial(e: Exponents, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Exponents, Rational)>>(it: I) -> Self {
        let mut p = MPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exponents) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if this is a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                (e.total() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(Exponents::default())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::total).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e.get(v)).max()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e.get(v) > 0)
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, k: u32) -> MPoly {
        MPoly::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.get(v) == k)
                .map(|(e, c)| (e.with(v, 0), c.clone())),
        )
    }

    pub fn scale(&self, s: &Rational) -> MPoly {
        if s.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn scale_int(&self, s: &BigInt) -> MPoly {
        self.scale(&Rational::from_integer(s.clone()))
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces `v` by `s·v`, i.e. multiplies the coefficient of v^k by s^k.
    pub fn rescale_var(&self, v: Var, s: &Rational) -> MPoly {
        if s.is_zero() {
            return self.subst(v, &MPoly::zero());
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c * num_traits::pow(s.clone(), e.get(v) as usize)))
                .collect(),
        }
    }

    /// Replaces every occurrence of `v` by `replacement`, expanded to canonical form.
    pub fn subst(&self, v: Var, replacement: &MPoly) -> MPoly {
        let max = self.degree_in(v).unwrap_or(0);
        let mut powers = Vec::with_capacity(max as usize + 1);
        powers.push(MPoly::one());
        for k in 1..=max as usize {
            let next = &powers[k - 1] * replacement;
            powers.push(next);
        }
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let rest = MPoly::monomial(e.with(v, 0), c.clone());
            out += &(&rest * &powers[e.get(v) as usize]);
        }
        out
    }

    /// Exact value at the point (x₀, y₀, λ₀).
    pub fn eval(&self, x0: &Rational, y0: &Rational, l0: &Rational) -> Rational {
        let point = [x0, y0, l0];
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.clone();
                for (i, base) in point.iter().enumerate() {
                    t *= num_traits::pow((*base).clone(), e.0[i] as usize);
                }
                t
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Canonical JSON value `[{"e":[a,b,c],"n":"..","d":".."}]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serialization is infallible")
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = rational::is_negative(c);
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono = latex_monomial(e);
            if mono.is_empty() || !mag.is_one() {
                if mag.denom().is_one() {
                    out.push_str(&mag.numer().to_string());
                } else {
                    out.push_str(&format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom()));
                }
            }
            out.push_str(&mono);
        }
        out
    }
}

fn latex_monomial(e: &Exponents) -> String {
    let mut s = String::new();
    for v in Var::ALL {
        match e.get(v) {
            0 => {}
            1 => s.push_str(v.latex()),
            k => s.push_str(&format!("{}^{{{}}}", v.latex(), k)),
        }
    }
    s
}

impl From<Rational> for MPoly {
    fn from(c: Rational) -> Self {
        MPoly::constant(c)
    }
}

impl<'a> Add<&'a MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<'a> Sub<&'a MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(mut self, rhs: MPoly) -> MPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl<'a> Mul<&'a MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(*ea + *eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl fmt::Display for MPoly {
    /// Descending graded-lexicographic order, e.g. `x^2 - x*L - x + 1/2*L`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = rational::is_negative(c);
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = Var::ALL
                .iter()
                .filter(|v| e.get(**v) > 0)
                .map(|v| match e.get(*v) {
                    1 => v.symbol().to_string(),
                    k => format!("{}^{}", v.symbol(), k),
                })
                .collect();
            if factors.is_empty() {
                f.write_str(&rational::to_text(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", rational::to_text(&mag))?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: [u32; 3],
    n: String,
    d: String,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().rev().map(|(e, c)| TermJson {
            e: e.0,
            n: c.numer().to_string(),
            d: c.denom().to_string(),
        }))
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = Vec::<TermJson>::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let c = rational::parse(&format!("{}/{}", t.n, t.d)).map_err(D::Error::custom)?;
            terms.push((Exponents(t.e), c));
        }
        Ok(MPoly::from_terms(terms))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial at byte {pos}: {msg}")]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

impl FromStr for MPoly {
    type Err = ParsePolyError;

    /// Accepts sums, products (explicit `*` or juxtaposition), integer powers,
    /// parentheses, integer literals and division by constants. λ may be
    /// written `L`, `λ` or `lambda`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            chars: s.char_indices().collect(),
            i: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.i < p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    i: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> ParsePolyError {
        let pos = self.chars.get(self.i).map(|c| c.0).unwrap_or_else(|| {
            self.chars
                .last()
                .map(|(p, c)| p + c.len_utf8())
                .unwrap_or(0)
        });
        ParsePolyError {
            pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.i < self.chars.len() && self.chars[self.i].1.is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.i).map(|c| c.1)
    }

    fn expr(&mut self) -> Result<MPoly, ParsePolyError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.i += 1;
                    acc += &self.term()?;
                }
                '-' => {
                    self.i += 1;
                    acc -= &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, ParsePolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.i += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.i += 1;
                    let d = self.unary()?;
                    let d = d
                        .as_constant()
                        .filter(|c| !c.is_zero())
                        .ok_or_else(|| self.error("division by a non-constant or zero"))?;
                    acc = acc.scale(&d.recip());
                }
                Some(c) if c.is_ascii_digit() || c == '(' || is_var_start(c) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly, ParsePolyError> {
        match self.peek() {
            Some('-') => {
                self.i += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.i += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly, ParsePolyError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.i += 1;
            self.skip_ws();
            let k = self.digits()?;
            let k: u32 = k.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<String, ParsePolyError> {
        let start = self.i;
        while self.i < self.chars.len() && self.chars[self.i].1.is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.error("expected digits"));
        }
        Ok(self.chars[start..self.i].iter().map(|c| c.1).collect())
    }

    fn atom(&mut self) -> Result<MPoly, ParsePolyError> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                let n: BigInt = d.parse().map_err(|_| self.error("bad integer"))?;
                Ok(MPoly::constant(Rational::from_integer(n)))
            }
            Some(c) if is_var_start(c) => {
                let start = self.i;
                while self.i < self.chars.len() && self.chars[self.i].1.is_alphabetic() {
                    self.i += 1;
                }
                let name: String = self.chars[start..self.i].iter().map(|c| c.1).collect();
                match name.as_str() {
                    "x" => Ok(MPoly::x()),
                    "y" => Ok(MPoly::y()),
                    "L" | "λ" | "lambda" => Ok(MPoly::lambda()),
                    _ => {
                        self.i = start;
                        Err(self.error("unknown variable"))
                    }
                }
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

fn is_var_start(c: char) -> bool {
    c.is_alphabetic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_cancels_to_canonical_form() {
        let a = p("x^2 - L*x");
        assert_eq!(&a + &p("L*x"), p("x^2"));
        assert_eq!(&a + &MPoly::zero(), a);
        assert_eq!(p("x - 1/2") + p("-x"), MPoly::constant(frac(-1, 2)));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn mul_expands() {
        assert_eq!(&MPoly::x() * &p("x - L"), p("x^2 - L x"));
        let a = p("x^3 + 1/3 y L");
        assert_eq!(&a * &MPoly::one(), a);
        assert_eq!(p("x - 1") * p("x + 1"), p("x^2 - 1"));
    }

    #[test]
    fn substitution() {
        assert_eq!(p("x - 1/2").subst(Var::X, &p("3x")), p("3x - 1/2"));
        assert_eq!(
            p("x^2 - (1+L)x + L/2").subst(Var::Lambda, &MPoly::zero()),
            p("x^2 - x")
        );
        assert_eq!(p("L x").subst(Var::Lambda, &p("1/3 L")), p("1/3 L x"));
        assert_eq!(
            p("L^2 x + L").rescale_var(Var::Lambda, &frac(1, 3)),
            p("L^2 x/9 + L/3")
        );
    }

    #[test]
    fn evaluation() {
        let a = p("x^2 - L x");
        assert_eq!(a.eval(&int(3), &int(0), &int(2)), int(3));
        assert_eq!(MPoly::zero().eval(&int(5), &int(1), &int(7)), int(0));
        assert_eq!(p("x - 1/2").eval(&int(1), &int(0), &int(0)), frac(1, 2));
    }

    #[test]
    fn text_rendering_is_graded_lex_descending() {
        assert_eq!(p("L/2 - x - x L + x^2").to_string(), "x^2 - x*L - x + 1/2*L");
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(MPoly::zero().to_string(), "0");
        assert_eq!(p("-3/4").to_string(), "-3/4");
        assert_eq!(p("2 x y^3 L^2").to_string(), "2*x*y^3*L^2");
    }

    #[test]
    fn latex_rendering() {
        assert_eq!(p("x^2 - x L + L/2").to_latex(), "x^{2} - x\\lambda + \\frac{1}{2}\\lambda");
        assert_eq!(MPoly::zero().to_latex(), "0");
    }

    #[test]
    fn json_shape() {
        let j = p("x - 1/2").to_json();
        assert_eq!(
            j,
            serde_json::json!([{"e":[1,0,0],"n":"1","d":"1"},{"e":[0,0,0],"n":"-1","d":"2"}])
        );
        let back: MPoly =
            serde_json::from_str(r#"[{"e":[1,0,0],"n":"2","d":"4"},{"e":[1,0,0],"n":"-1","d":"2"}]"#)
                .unwrap();
        assert!(back.is_zero());
    }

    #[test]
    fn parse_errors() {
        assert!("x + ".parse::<MPoly>().is_err());
        assert!("z".parse::<MPoly>().is_err());
        assert!("x / x".parse::<MPoly>().is_err());
        assert!("(x".parse::<MPoly>().is_err());
        assert_eq!(p("λ"), MPoly::lambda());
        assert_eq!(p("lambda"), MPoly::lambda());
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec(
            ((0u32..4, 0u32..3, 0u32..4), -6i64..7, 1i64..5),
            0..6,
        )
        .prop_map(|ts| {
            MPoly::from_terms(
                ts.into_iter()
                    .map(|((a, b, c), n, d)| (Exponents([a, b, c]), frac(n, d))),
            )
        })
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-9i64..10, 1i64..6).prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn eval_is_a_homomorphism(a in arb_poly(), b in arb_poly(),
                                  x0 in arb_rat(), y0 in arb_rat(), l0 in arb_rat()) {
            let ev = |q: &MPoly| q.eval(&x0, &y0, &l0);
            prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
            prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
        }

        #[test]
        fn substitution_composes(a in arb_poly(), c in arb_rat(), d in arb_rat()) {
            let l = MPoly::lambda();
            let twice = a.subst(Var::Lambda, &l.scale(&c)).subst(Var::Lambda, &l.scale(&d));
            prop_assert_eq!(&twice, &a.subst(Var::Lambda, &l.scale(&(&c * &d))));
            prop_assert_eq!(twice, a.rescale_var(Var::Lambda, &(c * d)));
        }

        #[test]
        fn text_and_json_round_trip(a in arb_poly()) {
            prop_assert_eq!(&a.to_string().parse::<MPoly>().unwrap(), &a);
            let back: MPoly = serde_json::from_value(a.to_json()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
