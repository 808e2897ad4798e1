use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Field, Rational, ScalarError};
use crate::poly::Poly;
use crate::roots::{rational_function_roots, RootSet};

/// An element of `ℚ(q)`: `numer / denom` with `denom` monic and coprime to
/// `numer`. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numer: Poly<Rational>,
    denom: Poly<Rational>,
}

impl RationalFunction {
    /// The indeterminate `q`.
    pub fn q() -> Self {
        RationalFunction {
            numer: Poly::x(),
            denom: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction {
            numer: Poly::constant(c),
            denom: Poly::one(),
        }
    }

    /// `coeff * q^exponent`.
    pub fn laurent(coeff: Rational, exponent: i64) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let k = exponent.unsigned_abs() as usize;
        if exponent >= 0 {
            RationalFunction {
                numer: Poly::monomial(coeff, k),
                denom: Poly::one(),
            }
        } else {
            RationalFunction {
                numer: Poly::constant(coeff),
                denom: Poly::monomial(Rational::one(), k),
            }
        }
    }

    /// Builds `numer / denom` in canonical form.
    pub fn from_parts(numer: Poly<Rational>, denom: Poly<Rational>) -> Result<Self, ScalarError> {
        if denom.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(numer, denom))
    }

    pub fn numer(&self) -> &Poly<Rational> {
        &self.numer
    }

    pub fn denom(&self) -> &Poly<Rational> {
        &self.denom
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.denom.degree() == Some(0) && self.numer.degree().unwrap_or(0) == 0 {
            Some(self.numer.coeff(0))
        } else {
            None
        }
    }

    pub fn evaluate(&self, q: &Rational) -> Result<Rational, ScalarError> {
        let d = self.denom.eval(q);
        if d.is_zero() {
            return Err(ScalarError::DenominatorVanishes(format!("{q}")));
        }
        Ok(self.numer.eval(q).checked_div(&d)?)
    }

    fn normalize(numer: Poly<Rational>, denom: Poly<Rational>) -> Self {
        if numer.is_zero() {
            return Self::zero();
        }
        let g = poly_gcd(&numer, &denom);
        let (numer, denom) = if g.degree() == Some(0) {
            (numer, denom)
        } else {
            (numer.exact_div(&g), denom.exact_div(&g))
        };
        let lc = denom.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RationalFunction { numer, denom }
        } else {
            let inv = lc.inv().expect("nonzero");
            RationalFunction {
                numer: numer.scale(&inv),
                denom: denom.scale(&inv),
            }
        }
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.denom == rhs.denom {
            return Self::normalize(&self.numer + &rhs.numer, self.denom.clone());
        }
        let g = poly_gcd(&self.denom, &rhs.denom);
        if g.degree() == Some(0) {
            // Coprime denominators: the sum is already in lowest terms.
            let numer = &(&self.numer * &rhs.denom) + &(&rhs.numer * &self.denom);
            if numer.is_zero() {
                return Self::zero();
            }
            return RationalFunction {
                numer,
                denom: &self.denom * &rhs.denom,
            };
        }
        let d1 = self.denom.exact_div(&g);
        let d2 = rhs.denom.exact_div(&g);
        let numer = &(&self.numer * &d2) + &(&rhs.numer * &d1);
        Self::normalize(numer, &self.denom * &d2)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let g1 = poly_gcd(&self.numer, &rhs.denom);
        let g2 = poly_gcd(&rhs.numer, &self.denom);
        let n1 = reduce_by(&self.numer, &g1);
        let d2 = reduce_by(&rhs.denom, &g1);
        let n2 = reduce_by(&rhs.numer, &g2);
        let d1 = reduce_by(&self.denom, &g2);
        // Monic divided by monic stays monic, so no rescaling is needed.
        RationalFunction {
            numer: &n1 * &n2,
            denom: &d1 * &d2,
        }
    }

    fn neg_impl(&self) -> Self {
        RationalFunction {
            numer: -self.numer.clone(),
            denom: self.denom.clone(),
        }
    }
}

fn reduce_by(p: &Poly<Rational>, g: &Poly<Rational>) -> Poly<Rational> {
    if g.degree() == Some(0) {
        p.clone()
    } else {
        p.exact_div(g)
    }
}

/// Monic gcd in `ℚ[q]` computed through a primitive remainder sequence over
/// `ℤ`, which keeps coefficient growth in check.
pub(crate) fn poly_gcd(a: &Poly<Rational>, b: &Poly<Rational>) -> Poly<Rational> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let va = a.valuation().unwrap_or(0);
    let vb = b.valuation().unwrap_or(0);
    let v = va.min(vb);
    let a = a.unshift(va);
    let b = b.unshift(vb);
    let core = if a.degree() == Some(0) || b.degree() == Some(0) {
        Poly::one()
    } else {
        let g = primitive_prs_gcd(to_primitive_integer(&a), to_primitive_integer(&b));
        from_integer_poly(&g).monic()
    };
    core.shift(v)
}

/// Scales to integer coefficients and removes the content.
fn to_primitive_integer(p: &Poly<Rational>) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    primitive_part(ints)
}

fn primitive_part(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let content = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return p;
    }
    let sign_fix = p.last().is_some_and(Signed::is_negative);
    for c in p.iter_mut() {
        *c = &*c / &content;
        if sign_fix {
            *c = -&*c;
        }
    }
    p
}

/// Pseudo-remainder of `a` by `b` over `ℤ`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let shift = dr - db;
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn primitive_prs_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return alloc::vec![BigInt::one()];
        }
        let r = primitive_part(pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    a
}

fn from_integer_poly(p: &[BigInt]) -> Poly<Rational> {
    Poly::from_coeffs(p.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

impl Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction {
            numer: Poly::zero(),
            denom: Poly::one(),
        }
    }

    fn one() -> Self {
        Self::constant(Rational::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::constant(Rational::from_integer(n))
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }

    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }

    fn inv(&self) -> Option<Self> {
        let lc = self.numer.leading()?.clone();
        let inv = lc.inv().expect("nonzero");
        Some(RationalFunction {
            numer: self.denom.scale(&inv),
            denom: self.numer.scale(&inv),
        })
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        fn cmp_poly(a: &Poly<Rational>, b: &Poly<Rational>) -> Ordering {
            a.coeffs()
                .len()
                .cmp(&b.coeffs().len())
                .then_with(|| {
                    for (x, y) in a.coeffs().iter().rev().zip(b.coeffs().iter().rev()) {
                        match x.cmp(y) {
                            Ordering::Equal => continue,
                            o => return o,
                        }
                    }
                    Ordering::Equal
                })
        }
        cmp_poly(&self.denom, &other.denom).then_with(|| cmp_poly(&self.numer, &other.numer))
    }

    fn passes_q_guard(&self) -> bool {
        match self.as_constant() {
            Some(c) => c.passes_q_guard(),
            None => true,
        }
    }

    fn find_roots(p: &Poly<Self>) -> RootSet<Self> {
        rational_function_roots(p)
    }

    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }
}

impl Add for RationalFunction {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_impl(&rhs)
    }
}

impl<'a> Add<&'a RationalFunction> for RationalFunction {
    type Output = Self;
    fn add(self, rhs: &'a RationalFunction) -> Self {
        self.add_impl(rhs)
    }
}

impl<'a, 'b> Add<&'b RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'b RationalFunction) -> RationalFunction {
        self.add_impl(rhs)
    }
}

impl Sub for RationalFunction {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_impl(&rhs.neg_impl())
    }
}

impl<'a> Sub<&'a RationalFunction> for RationalFunction {
    type Output = Self;
    fn sub(self, rhs: &'a RationalFunction) -> Self {
        self.add_impl(&rhs.neg_impl())
    }
}

impl<'a, 'b> Sub<&'b RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &'b RationalFunction) -> RationalFunction {
        self.add_impl(&rhs.neg_impl())
    }
}

impl Mul for RationalFunction {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_impl(&rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for RationalFunction {
    type Output = Self;
    fn mul(self, rhs: &'a RationalFunction) -> Self {
        self.mul_impl(rhs)
    }
}

impl<'a, 'b> Mul<&'b RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'b RationalFunction) -> RationalFunction {
        self.mul_impl(rhs)
    }
}

impl Div for RationalFunction {
    type Output = Self;

    /// Panics on a zero divisor; use [`Field::div_ref`] to handle it.
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.inv().expect("rational function division by zero");
        self.mul_impl(&inv)
    }
}

impl Neg for RationalFunction {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_impl()
    }
}

impl<'a> AddAssign<&'a RationalFunction> for RationalFunction {
    fn add_assign(&mut self, rhs: &'a RationalFunction) {
        *self = self.add_impl(rhs);
    }
}

impl<'a> SubAssign<&'a RationalFunction> for RationalFunction {
    fn sub_assign(&mut self, rhs: &'a RationalFunction) {
        *self = self.add_impl(&rhs.neg_impl());
    }
}

impl<'a> MulAssign<&'a RationalFunction> for RationalFunction {
    fn mul_assign(&mut self, rhs: &'a RationalFunction) {
        *self = self.mul_impl(rhs);
    }
}

/// Writes `Σ c_i q^(i - shift)` highest exponent first.
fn write_laurent(f: &mut fmt::Formatter<'_>, p: &Poly<Rational>, shift: i64) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = i as i64 - shift;
        let mag = if first { c.clone() } else { c.abs() };
        if !first {
            write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        if e == 0 {
            write!(f, "{mag}")?;
            continue;
        }
        if (-mag.clone()).is_one() {
            write!(f, "-")?;
        } else if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        if e == 1 {
            write!(f, "q")?;
        } else {
            write!(f, "q^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_monomial() {
            let k = self.denom.degree().unwrap_or(0) as i64;
            return write_laurent(f, &self.numer, k);
        }
        write!(f, "(")?;
        write_laurent(f, &self.numer, 0)?;
        write!(f, ")/(")?;
        write_laurent(f, &self.denom, 0)?;
        write!(f, ")")
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RationalFunction {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(super::parse::parse_expression(s)?.value)
    }
}
