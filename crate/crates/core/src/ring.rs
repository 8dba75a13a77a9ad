//! Exact coefficient rings: ℤ, ℚ, and polynomial rings over either.
//!
//! [`RingElement`] is the value type every other module computes with.
//! Mixing elements of different rings is an error ([`RingError::Mismatch`])
//! on the `try_*` methods; the operator impls assume a common ring and panic
//! otherwise, which is how graph-level code (where the ring is fixed at load
//! time) uses them.
//!
//! Scalar multiplication of splines uses elements of the same ring `R`, so
//! spline spaces are `R`-modules.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poly::{CoeffRing, ParseError, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring mismatch: {left} vs {right}")]
    Mismatch { left: Ring, right: Ring },
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("lcm requires nonzero arguments")]
    ZeroArgument,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Descriptor of the active coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ring {
    Integer,
    Rational,
    Polynomial {
        coeffs: CoeffRing,
        vars: Arc<[String]>,
    },
}

impl Ring {
    pub fn polynomial(coeffs: CoeffRing, vars: &[&str]) -> Ring {
        Ring::Polynomial {
            coeffs,
            vars: vars.iter().map(|v| v.to_string()).collect(),
        }
    }

    pub fn zero(&self) -> RingElement {
        self.from_int(0)
    }

    pub fn one(&self) -> RingElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: impl Into<BigInt>) -> RingElement {
        let n = n.into();
        match self {
            Ring::Integer => RingElement::Int(n),
            Ring::Rational => RingElement::Rat(BigRational::from_integer(n)),
            Ring::Polynomial { coeffs, vars } => {
                RingElement::Poly(Polynomial::from_int(*coeffs, vars.clone(), n))
            }
        }
    }

    /// Parses a label in the polynomial grammar. Integer and rational rings
    /// accept the same grammar with no variables.
    pub fn parse(&self, text: &str) -> Result<RingElement, ParseError> {
        let no_vars: Arc<[String]> = Arc::from(Vec::<String>::new());
        match self {
            Ring::Integer => {
                let p = Polynomial::parse(text, CoeffRing::Int, no_vars)?;
                Ok(RingElement::Int(p.constant_value().unwrap().to_integer()))
            }
            Ring::Rational => {
                let p = Polynomial::parse(text, CoeffRing::Rat, no_vars)?;
                Ok(RingElement::Rat(p.constant_value().unwrap()))
            }
            Ring::Polynomial { coeffs, vars } => {
                Polynomial::parse(text, *coeffs, vars.clone()).map(RingElement::Poly)
            }
        }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self, Ring::Polynomial { .. })
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integer => f.write_str("ZZ"),
            Ring::Rational => f.write_str("QQ"),
            Ring::Polynomial { coeffs, vars } => {
                let base = match coeffs {
                    CoeffRing::Int => "ZZ",
                    CoeffRing::Rat => "QQ",
                };
                write!(f, "{base}[{}]", vars.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingElement {
    Int(BigInt),
    Rat(BigRational),
    Poly(Polynomial),
}

impl RingElement {
    pub fn ring(&self) -> Ring {
        match self {
            RingElement::Int(_) => Ring::Integer,
            RingElement::Rat(_) => Ring::Rational,
            RingElement::Poly(p) => Ring::Polynomial {
                coeffs: p.coeff_ring(),
                vars: p.variables().clone(),
            },
        }
    }

    pub fn same_ring(&self, other: &RingElement) -> bool {
        match (self, other) {
            (RingElement::Int(_), RingElement::Int(_)) => true,
            (RingElement::Rat(_), RingElement::Rat(_)) => true,
            (RingElement::Poly(a), RingElement::Poly(b)) => a.compatible(b),
            _ => false,
        }
    }

    fn require_same(&self, other: &RingElement) -> Result<(), RingError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(RingError::Mismatch {
                left: self.ring(),
                right: other.ring(),
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Int(n) => n.is_zero(),
            RingElement::Rat(q) => q.is_zero(),
            RingElement::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingElement::Int(n) => n.is_one(),
            RingElement::Rat(q) => q.is_one(),
            RingElement::Poly(p) => p.is_one(),
        }
    }

    pub fn zero_like(&self) -> RingElement {
        self.ring().zero()
    }

    pub fn one_like(&self) -> RingElement {
        self.ring().one()
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            RingElement::Int(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Polynomial> {
        match self {
            RingElement::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.require_same(other)?;
        Ok(match (self, other) {
            (RingElement::Int(a), RingElement::Int(b)) => RingElement::Int(a + b),
            (RingElement::Rat(a), RingElement::Rat(b)) => RingElement::Rat(a + b),
            (RingElement::Poly(a), RingElement::Poly(b)) => RingElement::Poly(a + b),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.require_same(other)?;
        Ok(match (self, other) {
            (RingElement::Int(a), RingElement::Int(b)) => RingElement::Int(a - b),
            (RingElement::Rat(a), RingElement::Rat(b)) => RingElement::Rat(a - b),
            (RingElement::Poly(a), RingElement::Poly(b)) => RingElement::Poly(a - b),
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.require_same(other)?;
        Ok(match (self, other) {
            (RingElement::Int(a), RingElement::Int(b)) => RingElement::Int(a * b),
            (RingElement::Rat(a), RingElement::Rat(b)) => RingElement::Rat(a * b),
            (RingElement::Poly(a), RingElement::Poly(b)) => RingElement::Poly(a * b),
            _ => unreachable!(),
        })
    }

    pub fn pow(&self, exp: u32) -> RingElement {
        match self {
            RingElement::Int(a) => RingElement::Int(num_traits::pow(a.clone(), exp as usize)),
            RingElement::Rat(a) => RingElement::Rat(num_traits::pow(a.clone(), exp as usize)),
            RingElement::Poly(a) => RingElement::Poly(a.pow(exp)),
        }
    }

    /// The quotient `self / den` when it exists in the ring.
    pub fn exact_div(&self, den: &RingElement) -> Result<Option<RingElement>, RingError> {
        self.require_same(den)?;
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(match (self, den) {
            (RingElement::Int(a), RingElement::Int(b)) => {
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(RingElement::Int(q))
            }
            (RingElement::Rat(a), RingElement::Rat(b)) => Some(RingElement::Rat(a / b)),
            (RingElement::Poly(a), RingElement::Poly(b)) => a.exact_div(b)?.map(RingElement::Poly),
            _ => unreachable!(),
        })
    }

    /// Whether `self` divides `other`. `divides(0, 0)` is true; `divides(0, b)`
    /// with `b != 0` is an error.
    pub fn divides(&self, other: &RingElement) -> Result<bool, RingError> {
        self.require_same(other)?;
        if self.is_zero() {
            return if other.is_zero() {
                Ok(true)
            } else {
                Err(RingError::DivisionByZero)
            };
        }
        Ok(other.exact_div(self)?.is_some())
    }

    /// Greatest common divisor in unit normal form.
    pub fn gcd(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.require_same(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(RingError::GcdOfZeros);
        }
        Ok(match (self, other) {
            (RingElement::Int(a), RingElement::Int(b)) => RingElement::Int(a.gcd(b)),
            (RingElement::Rat(_), RingElement::Rat(_)) => self.one_like(),
            (RingElement::Poly(a), RingElement::Poly(b)) => RingElement::Poly(a.gcd(b)?),
            _ => unreachable!(),
        })
    }

    /// Least common multiple, chosen so that `gcd * lcm = a * b` up to a unit.
    pub fn lcm(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.require_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(RingError::ZeroArgument);
        }
        let g = self.gcd(other)?;
        let prod = self.try_mul(other)?;
        Ok(prod
            .exact_div(&g)?
            .expect("gcd divides the product")
            .normalize())
    }

    pub fn is_unit(&self) -> bool {
        match self {
            RingElement::Int(a) => a.abs().is_one(),
            RingElement::Rat(a) => !a.is_zero(),
            RingElement::Poly(p) => p.is_unit(),
        }
    }

    /// Canonical associate: nonnegative over ℤ, 1 for nonzero rationals,
    /// monic (ℚ) or positive leading coefficient (ℤ) for polynomials.
    pub fn normalize(&self) -> RingElement {
        match self {
            RingElement::Int(a) => RingElement::Int(a.abs()),
            RingElement::Rat(a) => {
                if a.is_zero() {
                    self.clone()
                } else {
                    self.one_like()
                }
            }
            RingElement::Poly(p) => RingElement::Poly(p.normalize()),
        }
    }

    /// Equal up to multiplication by a unit.
    pub fn associates(&self, other: &RingElement) -> bool {
        self.same_ring(other) && self.normalize() == other.normalize()
    }

    /// The unit `u` with `self = u * other`, if `self` and `other` are associates.
    pub fn unit_ratio(&self, other: &RingElement) -> Option<RingElement> {
        if !self.same_ring(other) || other.is_zero() {
            return None;
        }
        let u = self.exact_div(other).ok()??;
        u.is_unit().then_some(u)
    }

    /// Product of a list of elements; `one` for the empty list.
    pub fn product<'a, I>(ring: &Ring, items: I) -> RingElement
    where
        I: IntoIterator<Item = &'a RingElement>,
    {
        items.into_iter().fold(ring.one(), |acc, x| &acc * x)
    }

    /// Exact evaluation of a polynomial at integer or rational values given
    /// per variable name. Integers and rationals evaluate to themselves.
    pub fn substitute(
        &self,
        values: &std::collections::BTreeMap<String, RingElement>,
    ) -> Result<RingElement, RingError> {
        match self {
            RingElement::Poly(p) => {
                let mut point = std::collections::BTreeMap::new();
                for (name, v) in values {
                    let q = match v {
                        RingElement::Int(n) => BigRational::from_integer(n.clone()),
                        RingElement::Rat(q) => q.clone(),
                        RingElement::Poly(_) => {
                            return Err(RingError::Mismatch {
                                left: self.ring(),
                                right: v.ring(),
                            })
                        }
                    };
                    point.insert(name.clone(), q);
                }
                let value = p.substitute(&point)?;
                let integral = value.is_integer()
                    && values.values().all(|v| matches!(v, RingElement::Int(_)));
                Ok(if integral {
                    RingElement::Int(value.to_integer())
                } else {
                    RingElement::Rat(value)
                })
            }
            _ => Ok(self.clone()),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Int(a) => write!(f, "{a}"),
            RingElement::Rat(a) => write!(f, "{a}"),
            RingElement::Poly(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl PartialOrd for RingElement {
    /// Only integers and rationals are ordered.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (RingElement::Int(a), RingElement::Int(b)) => Some(a.cmp(b)),
            (RingElement::Rat(a), RingElement::Rat(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }
}

impl From<BigInt> for RingElement {
    fn from(n: BigInt) -> Self {
        RingElement::Int(n)
    }
}

impl From<i64> for RingElement {
    fn from(n: i64) -> Self {
        RingElement::Int(n.into())
    }
}

impl From<Polynomial> for RingElement {
    fn from(p: Polynomial) -> Self {
        RingElement::Poly(p)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        match self {
            RingElement::Int(a) => RingElement::Int(-a),
            RingElement::Rat(a) => RingElement::Rat(-a),
            RingElement::Poly(p) => RingElement::Poly(-p),
        }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}
