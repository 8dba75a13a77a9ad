//! Sparse multivariate polynomials over ℤ or ℚ.
//!
//! Coefficients are always stored as [`BigRational`]; the [`CoeffRing`]
//! marker decides which ring the polynomial lives in. A polynomial marked
//! [`CoeffRing::Int`] only ever holds integral coefficients, and operations
//! that would leave ℤ (exact division, parsing of `p/q` literals) refuse to.
//!
//! Terms are kept in a [`BTreeMap`] keyed by [`Monomial`], whose ordering is
//! graded lexicographic with respect to the declared variable order. The
//! largest key is therefore the leading term.

mod gcd;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parse::{ParseError, ParseErrorKind};

/// Coefficient ring of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffRing {
    Int,
    Rat,
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Int => f.write_str("int"),
            CoeffRing::Rat => f.write_str("rat"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
}

/// Exponent vector, one entry per declared variable.
///
/// Ordered graded-lexicographically: total degree first, then the
/// exponent of the first variable, then the second, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when every exponent of `other` is at most the one in `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: CoeffRing,
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(coeffs: CoeffRing, vars: Arc<[String]>) -> Self {
        Polynomial {
            coeffs,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(coeffs: CoeffRing, vars: Arc<[String]>) -> Self {
        Self::constant(coeffs, vars, BigRational::one())
    }

    /// A constant polynomial. Panics if `value` is not integral over ℤ.
    pub fn constant(coeffs: CoeffRing, vars: Arc<[String]>, value: BigRational) -> Self {
        assert!(
            coeffs == CoeffRing::Rat || value.is_integer(),
            "non-integral constant {value} in an integer polynomial ring"
        );
        let nvars = vars.len();
        let mut p = Self::zero(coeffs, vars);
        if !value.is_zero() {
            p.terms.insert(Monomial::one(nvars), value);
        }
        p
    }

    pub fn from_int(coeffs: CoeffRing, vars: Arc<[String]>, value: impl Into<BigInt>) -> Self {
        Self::constant(coeffs, vars, BigRational::from_integer(value.into()))
    }

    /// The `index`-th declared variable as a polynomial.
    pub fn variable(coeffs: CoeffRing, vars: Arc<[String]>, index: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        let mut p = Self::zero(coeffs, vars);
        p.terms.insert(Monomial(exps), BigRational::one());
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(coeffs: CoeffRing, vars: Arc<[String]>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(coeffs, vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), p.vars.len(), "monomial arity mismatch");
            assert!(
                coeffs == CoeffRing::Rat || c.is_integer(),
                "non-integral coefficient in an integer polynomial ring"
            );
            p.add_term(m, c);
        }
        p
    }

    pub fn coeff_ring(&self) -> CoeffRing {
        self.coeffs
    }

    pub fn variables(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Same coefficient ring and same variable list.
    pub fn compatible(&self, other: &Polynomial) -> bool {
        self.coeffs == other.coeffs && self.vars == other.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.leading_term().map(|(_, c)| c)
    }

    /// The coefficient of `monomial` (zero when absent).
    pub fn coefficient(&self, monomial: &Monomial) -> BigRational {
        self.terms.get(monomial).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Whether the unit group of the coefficient ring contains this polynomial:
    /// nonzero constants over ℚ, ±1 over ℤ.
    pub fn is_unit(&self) -> bool {
        match (self.constant_value(), self.coeffs) {
            (Some(c), CoeffRing::Rat) => !c.is_zero(),
            (Some(c), CoeffRing::Int) => c.is_integer() && c.numer().abs().is_one(),
            (None, _) => false,
        }
    }

    /// Unit normal form: monic over ℚ, positive leading coefficient over ℤ.
    pub fn normalize(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => match self.coeffs {
                CoeffRing::Rat => {
                    if lc.is_one() {
                        self.clone()
                    } else {
                        self.scale(&lc.recip())
                    }
                }
                CoeffRing::Int => {
                    if lc.is_negative() {
                        -self
                    } else {
                        self.clone()
                    }
                }
            },
        }
    }

    /// The unit `u` with `self = u * self.normalize()`.
    pub fn normalizing_unit(&self) -> BigRational {
        match (self.leading_coefficient(), self.coeffs) {
            (None, _) => BigRational::one(),
            (Some(lc), CoeffRing::Rat) => lc.clone(),
            (Some(lc), CoeffRing::Int) => {
                if lc.is_negative() {
                    -BigRational::one()
                } else {
                    BigRational::one()
                }
            }
        }
    }

    /// Integer gcd of the coefficients, positive; zero for the zero polynomial.
    /// Only meaningful over ℤ.
    pub fn integer_content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
    }

    pub fn scale(&self, factor: &BigRational) -> Polynomial {
        if factor.is_zero() {
            return Self::zero(self.coeffs, self.vars.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c * factor))
            .collect();
        let out = Polynomial {
            coeffs: self.coeffs,
            vars: self.vars.clone(),
            terms,
        };
        debug_assert!(out.coeffs == CoeffRing::Rat || out.terms.values().all(|c| c.is_integer()));
        out
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Self::one(self.coeffs, self.vars.clone());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, monomial: &Monomial, coeff: &BigRational) -> Polynomial {
        if coeff.is_zero() {
            return Self::zero(self.coeffs, self.vars.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.mul(monomial), c * coeff))
            .collect();
        Polynomial {
            coeffs: self.coeffs,
            vars: self.vars.clone(),
            terms,
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    /// Exact quotient `self / den`, or `None` when `den` does not divide
    /// `self` in the polynomial ring.
    ///
    /// Runs multivariate division by the single divisor under graded-lex
    /// leading terms. If the leading term of the running remainder is ever
    /// not divisible by the leading term of `den`, no exact quotient exists.
    pub fn exact_div(&self, den: &Polynomial) -> Result<Option<Polynomial>, PolyError> {
        assert!(self.compatible(den), "incompatible polynomial rings");
        let (lm_d, lc_d) = den.leading_term().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.coeffs, self.vars.clone());
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            let Some(m) = lm_r.div(lm_d) else {
                return Ok(None);
            };
            let c = lc_r / lc_d;
            if self.coeffs == CoeffRing::Int && !c.is_integer() {
                return Ok(None);
            }
            rem = &rem - &den.mul_term(&m, &c);
            quot.add_term(m, c);
        }
        Ok(Some(quot))
    }

    pub fn divides(&self, other: &Polynomial) -> Result<bool, PolyError> {
        if self.is_zero() {
            return if other.is_zero() {
                Ok(true)
            } else {
                Err(PolyError::DivisionByZero)
            };
        }
        Ok(other.exact_div(self)?.is_some())
    }

    /// Normalized greatest common divisor (monic over ℚ, positive leading
    /// coefficient over ℤ).
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        assert!(self.compatible(other), "incompatible polynomial rings");
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        Ok(gcd::gcd(self, other))
    }

    /// Normalized least common multiple of two nonzero polynomials.
    pub fn lcm(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let g = self.gcd(other)?;
        let prod = self * other;
        Ok(prod
            .exact_div(&g)?
            .expect("gcd divides the product")
            .normalize())
    }

    /// Evaluates at the given point. Every variable must be assigned.
    pub fn substitute(
        &self,
        values: &BTreeMap<String, BigRational>,
    ) -> Result<BigRational, PolyError> {
        let point = self
            .vars
            .iter()
            .map(|v| {
                values
                    .get(v)
                    .cloned()
                    .ok_or_else(|| PolyError::MissingAssignment(v.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.eval_at(&point))
    }

    /// Evaluates at a point given in variable order.
    pub fn eval_at(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Parses `text` in the label grammar.
    pub fn parse(text: &str, coeffs: CoeffRing, vars: Arc<[String]>) -> Result<Polynomial, ParseError> {
        parse::parse(text, coeffs, vars)
    }

    /// Splits into coefficients of powers of `var`; entry `k` multiplies `var^k`.
    pub(crate) fn split_by(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(self.coeffs, self.vars.clone()); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            out[k].terms.insert(Monomial(e), c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Inverse of [`Polynomial::split_by`].
    pub(crate) fn join_by(parts: &[Polynomial], var: usize, like: &Polynomial) -> Polynomial {
        let mut out = Self::zero(like.coeffs, like.vars.clone());
        for (k, p) in parts.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut e = m.0.clone();
                e[var] += k as u32;
                out.terms.insert(Monomial(e), c.clone());
            }
        }
        out
    }

    fn check(&self, other: &Polynomial) {
        assert!(
            self.compatible(other),
            "incompatible polynomial rings: {}{:?} vs {}{:?}",
            self.coeffs,
            self.vars,
            other.coeffs,
            other.vars
        );
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check(rhs);
        let mut out = Polynomial::zero(self.coeffs, self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Prints in descending graded-lex order, e.g. `x^2 + 2*x*y - 1/3*y`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mono = m
                .0
                .iter()
                .zip(self.vars.iter())
                .filter(|(&e, _)| e > 0)
                .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect::<Vec<_>>()
                .join("*");
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}
