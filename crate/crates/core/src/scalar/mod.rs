//! Exact scalars: arbitrary-precision rationals and univariate rational
//! functions in the formal parameter `q`.
//!
//! All computation is generic over the [`Field`] trait. A run over a
//! specialized `q` uses [`Rational`]; a run over a symbolic `q` uses
//! [`RationalFunction`]. [`FieldElement`] is the dynamically tagged form used
//! at text boundaries.

mod parse;
mod ratfunc;
mod rational;

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

pub use ratfunc::RationalFunction;
pub use rational::Rational;

use crate::poly::Poly;
use crate::roots::RootSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q = {0}")]
    DenominatorVanishes(String),
    #[error("q = {0} is not allowed (must avoid 0, 1 and -1)")]
    ForbiddenQ(String),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

/// A commutative field with exact arithmetic.
///
/// Operations that can fail (inversion, division) return `Option` so callers
/// decide how a zero divisor is reported.
pub trait Field:
    Clone
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn mul_ref(&self, rhs: &Self) -> Self;

    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul_ref(&r))
    }

    /// Integer power; negative exponents invert. `None` for `0^e` with `e < 0`.
    fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        Some(acc)
    }

    /// A total order used only to make outputs deterministic.
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    /// True when this value may serve as `q`: it must not be a root of unity.
    fn passes_q_guard(&self) -> bool;

    /// Roots of `p` lying in this field, with multiplicities.
    fn find_roots(p: &Poly<Self>) -> RootSet<Self>;

    /// The value as a rational constant, if it is one.
    fn as_rational(&self) -> Option<Rational>;
}

/// `coeff * q^exponent` in the rational function field.
pub fn make_laurent(coeff: &Rational, exponent: i64) -> FieldElement {
    FieldElement::Function(RationalFunction::laurent(coeff.clone(), exponent))
}

/// Evaluates a rational function at a rational value of `q`.
pub fn specialize(x: &RationalFunction, q_value: &Rational) -> Result<Rational, ScalarError> {
    if !q_value.passes_q_guard() {
        return Err(ScalarError::ForbiddenQ(alloc::format!("{q_value}")));
    }
    x.evaluate(q_value)
}

/// A symbolic `q` always passes; a rational passes iff it avoids `0, 1, -1`,
/// the only rational roots of unity (and zero).
pub fn is_not_root_of_unity_guard(q_value: &FieldElement) -> bool {
    match q_value {
        FieldElement::Rational(r) => r.passes_q_guard(),
        FieldElement::Function(f) => f.passes_q_guard(),
    }
}

/// A scalar tagged with the field it lives in.
///
/// Equality compares values, embedding `ℚ` into `ℚ(q)` when tags differ.
#[derive(Clone, Debug)]
pub enum FieldElement {
    Rational(Rational),
    Function(RationalFunction),
}

impl FieldElement {
    pub fn symbolic_q() -> Self {
        FieldElement::Function(RationalFunction::q())
    }

    pub fn to_function(&self) -> RationalFunction {
        match self {
            FieldElement::Rational(r) => RationalFunction::constant(r.clone()),
            FieldElement::Function(f) => f.clone(),
        }
    }

    /// Converts into `ℚ`, evaluating at `q_value` when the element mentions `q`.
    pub fn to_rational_at(&self, q_value: &Rational) -> Result<Rational, ScalarError> {
        match self {
            FieldElement::Rational(r) => Ok(r.clone()),
            FieldElement::Function(f) => specialize(f, q_value),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Function(f) => f.is_zero(),
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => a == b,
            _ => self.to_function() == other.to_function(),
        }
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => fmt::Display::fmt(r, f),
            FieldElement::Function(x) => fmt::Display::fmt(x, f),
        }
    }
}

impl FromStr for FieldElement {
    type Err = ScalarError;

    /// Text mentioning `q` parses into `ℚ(q)`; anything else into `ℚ`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parsed = parse::parse_expression(s)?;
        if parsed.mentions_q {
            Ok(FieldElement::Function(parsed.value))
        } else {
            let r = parsed
                .value
                .as_constant()
                .ok_or_else(|| ScalarError::Parse(s.into()))?;
            Ok(FieldElement::Rational(r))
        }
    }
}
