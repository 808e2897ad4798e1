//! Roots of polynomials that lie in the working field.
//!
//! Over `ℚ` the squarefree part is solved modulo a small good prime, the
//! simple roots are Hensel-lifted and read back as fractions. Over `ℚ(q)`
//! the polynomial is specialized at an integer `q0`, each rational root is
//! Newton-lifted to a power series in `q - q0` and turned back into a rational
//! function by Padé approximation. Every candidate is verified exactly, so the
//! result never contains a false root.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Poly;
use crate::scalar::{Field, Rational, RationalFunction};

/// Roots with multiplicities, sorted by [`Field::canonical_cmp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet<F> {
    pub roots: Vec<(F, usize)>,
    /// True when the multiplicities add up to the degree.
    pub splits: bool,
}

impl<F: Field> RootSet<F> {
    pub fn distinct(&self) -> impl Iterator<Item = &F> {
        self.roots.iter().map(|(r, _)| r)
    }

    fn from_candidates(p: &Poly<F>, candidates: Vec<F>) -> Self {
        let mut rest = p.clone();
        let mut roots = Vec::new();
        for r in candidates {
            let lin = Poly::from_coeffs(vec![-r.clone(), F::one()]);
            let mut mult = 0;
            loop {
                let (q, rem) = rest.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
        roots.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        RootSet {
            splits: rest.degree() == Some(0),
            roots,
        }
    }
}

/// Rational roots of a polynomial over `ℚ`.
pub fn rational_roots_q(p: &Poly<Rational>) -> RootSet<Rational> {
    let Some(deg) = p.degree() else {
        return RootSet { roots: Vec::new(), splits: false };
    };
    if deg == 0 {
        return RootSet { roots: Vec::new(), splits: true };
    }
    let m = p.valuation().unwrap_or(0);
    let mut candidates = Vec::new();
    if m > 0 {
        candidates.push(Rational::zero());
    }
    let g = p.unshift(m);
    if g.degree().unwrap_or(0) > 0 {
        let f = integer_primitive(&g.squarefree_part());
        candidates.extend(nonzero_integer_poly_roots(&f));
    }
    RootSet::from_candidates(p, candidates)
}

/// Clears denominators and removes the content.
fn integer_primitive(p: &Poly<Rational>) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

fn reduce_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = f
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = pow_mod(b[db], p - 2, p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = ((r[top] as u128 * inv as u128) % p as u128) as u64;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let sub = ((c as u128 * bj as u128) % p as u128) as u64;
                let idx = top - db + j;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

fn squarefree_mod(f: &[u64], p: u64) -> bool {
    let df: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| ((i as u128 * c as u128) % p as u128) as u64)
        .collect();
    let mut a = f.to_vec();
    let mut b = df;
    while b.last() == Some(&0) {
        b.pop();
    }
    if b.is_empty() {
        return false;
    }
    while !b.is_empty() {
        let r = rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1
}

fn eval_big(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    f.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn deriv_big(f: &[BigInt]) -> Vec<BigInt> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Rational roots of a squarefree integer polynomial with `f(0) != 0`.
fn nonzero_integer_poly_roots(f: &[BigInt]) -> Vec<Rational> {
    let n = f.len() - 1;
    let lc = f[n].clone();
    let c0 = f[0].clone();
    let p = (3u64..)
        .filter(|&p| is_prime(p))
        .find(|&p| {
            let fp = reduce_mod(f, p);
            fp.len() == n + 1 && squarefree_mod(&fp, p)
        })
        .expect("a good prime exists for a squarefree polynomial");
    let fp = reduce_mod(f, p);
    let bound = BigInt::from(2) * lc.abs() * c0.abs();
    let df = deriv_big(f);
    let mut out = Vec::new();
    for r in 0..p {
        let v = fp
            .iter()
            .rev()
            .fold(0u64, |acc, &c| ((acc as u128 * r as u128 + c as u128) % p as u128) as u64);
        if v != 0 {
            continue;
        }
        let mut modulus = BigInt::from(p);
        let mut root = BigInt::from(r);
        while modulus <= bound {
            modulus = &modulus * &modulus;
            let fx = eval_big(f, &root, &modulus);
            let dfx = eval_big(&df, &root, &modulus);
            root = (&root - fx * inv_mod(&dfx, &modulus)).mod_floor(&modulus);
        }
        // lc * (a/b) is an integer of size at most |lc c0| when b | lc.
        let mut num = (&lc * &root).mod_floor(&modulus);
        if &num * 2 > modulus {
            num -= &modulus;
        }
        let cand = Rational::from_big(num_rational::BigRational::new(num, lc.clone()));
        let exact = f.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * &cand + &Rational::from_integer(c.clone())
        });
        if exact.is_zero() {
            out.push(cand);
        }
    }
    out
}

/// Roots of a polynomial over `ℚ(q)` lying in `ℚ(q)`.
pub fn rational_function_roots(p: &Poly<RationalFunction>) -> RootSet<RationalFunction> {
    let Some(deg) = p.degree() else {
        return RootSet { roots: Vec::new(), splits: false };
    };
    if deg == 0 {
        return RootSet { roots: Vec::new(), splits: true };
    }
    let m = p.valuation().unwrap_or(0);
    let mut candidates = Vec::new();
    if m > 0 {
        candidates.push(RationalFunction::zero());
    }
    let g = p.unshift(m);
    if g.degree().unwrap_or(0) > 0 {
        let sqf = g.squarefree_part();
        candidates.extend(series_roots(&clear_denominators(&sqf)));
    }
    RootSet::from_candidates(p, candidates)
}

/// Multiplies through by the lcm of the coefficient denominators, giving
/// coefficients in `ℚ[q]`.
fn clear_denominators(p: &Poly<RationalFunction>) -> Vec<Poly<Rational>> {
    let l = p
        .coeffs()
        .iter()
        .fold(Poly::one(), |acc: Poly<Rational>, c| acc.lcm(c.denom()));
    p.coeffs()
        .iter()
        .map(|c| (c.numer() * &l).exact_div(c.denom()))
        .collect()
}

/// `a(s + q0)` as a polynomial in `s`.
fn taylor_shift(a: &Poly<Rational>, q0: &Rational) -> Poly<Rational> {
    let lin = Poly::from_coeffs(vec![q0.clone(), Rational::one()]);
    a.coeffs()
        .iter()
        .rev()
        .fold(Poly::zero(), |acc, c| &(&acc * &lin) + &Poly::constant(c.clone()))
}

fn truncate(a: &Poly<Rational>, n: usize) -> Poly<Rational> {
    Poly::from_coeffs(a.coeffs().iter().take(n).cloned().collect())
}

fn series_inverse(a: &Poly<Rational>, n: usize) -> Poly<Rational> {
    let a0_inv = a.coeff(0).inv().expect("unit series");
    let mut inv = Poly::constant(a0_inv);
    let mut prec = 1;
    let two = Poly::constant(Rational::from(2));
    while prec < n {
        prec = (2 * prec).min(n);
        let e = truncate(&(&truncate(a, prec) * &inv), prec);
        inv = truncate(&(&inv * &(&two - &e)), prec);
    }
    inv
}

fn series_eval(g: &[Poly<Rational>], x: &Poly<Rational>, n: usize) -> Poly<Rational> {
    g.iter()
        .rev()
        .fold(Poly::zero(), |acc, c| truncate(&(&(&acc * x) + c), n))
}

fn series_roots(g: &[Poly<Rational>]) -> Vec<RationalFunction> {
    let lc = g.last().expect("nonconstant");
    let du = g[0].degree().unwrap_or(0);
    let dv = lc.degree().unwrap_or(0);
    let n = du + dv + 1;
    let q0 = (2i64..)
        .map(Rational::from)
        .find(|q0| {
            let spec: Poly<Rational> = Poly::from_coeffs(g.iter().map(|c| c.eval(q0)).collect());
            spec.degree() == Some(g.len() - 1) && spec.is_squarefree()
        })
        .expect("some integer keeps the polynomial squarefree");
    let spec: Poly<Rational> = Poly::from_coeffs(g.iter().map(|c| c.eval(&q0)).collect());
    let shifted: Vec<Poly<Rational>> = g.iter().map(|c| taylor_shift(c, &q0)).collect();
    let dshifted: Vec<Poly<Rational>> = shifted
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&Rational::from(i as i64)))
        .collect();
    let original: Poly<RationalFunction> =
        Poly::from_coeffs(g.iter().map(|c| RationalFunction::from_parts(c.clone(), Poly::one()).expect("nonzero")).collect());
    let back = -q0.clone();
    let mut out = Vec::new();
    for r0 in rational_roots_q(&spec).roots.into_iter().map(|(r, _)| r) {
        let mut x = Poly::constant(r0);
        let mut prec = 1;
        while prec < n {
            prec = (2 * prec).min(n);
            let fx = series_eval(&shifted, &x, prec);
            let dfx = series_eval(&dshifted, &x, prec);
            let step = truncate(&(&fx * &series_inverse(&dfx, prec)), prec);
            x = &x - &step;
        }
        let Some((u, v)) = pade(&x, n, du) else {
            continue;
        };
        let Ok(cand) = RationalFunction::from_parts(taylor_shift(&u, &back), taylor_shift(&v, &back))
        else {
            continue;
        };
        if original.eval(&cand).is_zero() {
            out.push(cand);
        }
    }
    out
}

/// `u / v ≡ x mod s^n` with `deg u ≤ du`, via the extended Euclidean algorithm.
fn pade(x: &Poly<Rational>, n: usize, du: usize) -> Option<(Poly<Rational>, Poly<Rational>)> {
    let mut r0 = Poly::monomial(Rational::one(), n);
    let mut r1 = truncate(x, n);
    let mut t0: Poly<Rational> = Poly::zero();
    let mut t1: Poly<Rational> = Poly::one();
    while r1.degree().is_some_and(|d| d > du) {
        let (quo, rem) = r0.div_rem(&r1);
        let t2 = &t0 - &(&quo * &t1);
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t2;
    }
    if t1.coeff(0).is_zero() {
        return None;
    }
    Some((r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::from_coeffs(cs.iter().map(|&c| Rational::from(c)).collect())
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn rational_examples() {
        let rs = rational_roots_q(&p(&[2, -3, 1]));
        assert!(rs.splits);
        assert_eq!(rs.roots, vec![(rat(1, 1), 1), (rat(2, 1), 1)]);
        let none = rational_roots_q(&p(&[1, 0, 1]));
        assert!(!none.splits);
        assert!(none.roots.is_empty());
    }

    #[test]
    fn multiplicities_and_fractions() {
        // x^2 (3x - 2)^3 (x + 7/5)
        let f = p(&[0, 0, 1])
            * p(&[-2, 3]).pow(3)
            * Poly::from_coeffs(vec![rat(7, 5), Rational::one()]);
        let rs = rational_roots_q(&f);
        assert!(rs.splits);
        assert_eq!(rs.roots, vec![(rat(-7, 5), 1), (rat(0, 1), 2), (rat(2, 3), 3)]);
        let g = p(&[-2, 0, 1]) * p(&[-1024, 81]);
        let rs = rational_roots_q(&g);
        assert!(!rs.splits);
        assert_eq!(rs.roots, vec![(rat(1024, 81), 1)]);
    }

    #[test]
    fn function_field_roots() {
        let q = RationalFunction::q();
        let r1: RationalFunction = "3/2*q^-3".parse().unwrap();
        let r2: RationalFunction = "(q^2 + 1)/(q - 5)".parse().unwrap();
        let f = Poly::from_roots(&[r1.clone(), r2.clone(), r2.clone()])
            * Poly::from_coeffs(vec![-q.clone(), RationalFunction::zero(), RationalFunction::one()]);
        let rs = rational_function_roots(&f);
        assert!(!rs.splits);
        let mut expect = vec![(r1, 1), (r2, 2)];
        expect.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        assert_eq!(rs.roots, expect);
    }
}
