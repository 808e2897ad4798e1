//! Explicit matrix realizations: `V_d(a,b,c)` for the universal Askey-Wilson
//! algebra, `E` and `O` modules for the universal DAHA, their `ℤ/4` twists
//! and the pushforward from DAHA-modules to Askey-Wilson modules.
//!
//! Basis vector `v_j` is the `j`-th standard coordinate vector and column `j`
//! of a generator matrix holds the image of `v_j`.

mod daha;
mod vd;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use daha::{build_daha, build_e, build_o};
pub use vd::{build_vd, vd_character};

use crate::linalg::{inverse, Matrix};
use crate::scalar::{Field, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizationError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("unknown generator symbol {0:?}")]
    UnknownSymbol(String),
    #[error("generator {0} is not invertible")]
    SingularGenerator(usize),
    #[error("generator matrices must be square of one common size")]
    Shape,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DahaFamily {
    E,
    O,
}

impl fmt::Display for DahaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DahaFamily::E => "E",
            DahaFamily::O => "O",
        })
    }
}

/// Parameters of `V_d(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VdSpec<F> {
    pub d: usize,
    pub q: F,
    pub a: F,
    pub b: F,
    pub c: F,
}

impl<F: Field> VdSpec<F> {
    pub fn new(d: usize, q: F, a: F, b: F, c: F) -> Result<Self, RealizationError> {
        let spec = VdSpec { d, q, a, b, c };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), RealizationError> {
        check_q(&self.q)?;
        for (name, x) in [("a", &self.a), ("b", &self.b), ("c", &self.c)] {
            if x.is_zero() {
                return Err(RealizationError::InvalidSpec(format!("{name} must be nonzero")));
            }
        }
        Ok(())
    }
}

/// Parameters of `E(k0,k1,k2,k3)` (odd `d`, `k0^2 = q^(-d-1)`) or
/// `O(k0,k1,k2,k3)` (even `d`, `k0 k1 k2 k3 = q^(-d-1)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DahaSpec<F> {
    pub family: DahaFamily,
    pub d: usize,
    pub q: F,
    pub k: [F; 4],
}

impl<F: Field> DahaSpec<F> {
    pub fn e(d: usize, q: F, k: [F; 4]) -> Result<Self, RealizationError> {
        let spec = DahaSpec { family: DahaFamily::E, d, q, k };
        spec.validate()?;
        Ok(spec)
    }

    pub fn o(d: usize, q: F, k: [F; 4]) -> Result<Self, RealizationError> {
        let spec = DahaSpec { family: DahaFamily::O, d, q, k };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), RealizationError> {
        check_q(&self.q)?;
        if self.k.iter().any(F::is_zero) {
            return Err(RealizationError::InvalidSpec("k0..k3 must be nonzero".into()));
        }
        let target = q_pow(&self.q, -(self.d as i64) - 1);
        match self.family {
            DahaFamily::E => {
                if self.d % 2 == 0 {
                    return Err(RealizationError::InvalidSpec("E needs odd d".into()));
                }
                if self.k[0].mul_ref(&self.k[0]) != target {
                    return Err(RealizationError::InvalidSpec(format!(
                        "E needs k0^2 = q^-{}",
                        self.d + 1
                    )));
                }
            }
            DahaFamily::O => {
                if self.d % 2 == 1 {
                    return Err(RealizationError::InvalidSpec("O needs even d".into()));
                }
                let prod = self.k.iter().fold(F::one(), |acc, x| acc.mul_ref(x));
                if prod != target {
                    return Err(RealizationError::InvalidSpec(format!(
                        "O needs k0 k1 k2 k3 = q^-{}",
                        self.d + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// The `k` rotated so that the twist `eps` of this module reads as if it
    /// were untwisted: `k'_i = k_(i + eps)`.
    pub fn rotated_k(&self, eps: Twist) -> [F; 4] {
        core::array::from_fn(|i| self.k[(i + eps.value() as usize) % 4].clone())
    }
}

/// `q^(-(d+1)/2)`, the positive solution of `k0^2 = q^(-d-1)` for odd `d`.
pub fn solve_e_k0<F: Field>(d: usize, q: &F) -> Option<F> {
    (d % 2 == 1).then(|| q_pow(q, -((d as i64 + 1) / 2)))
}

/// The `k3` with `k0 k1 k2 k3 = q^(-d-1)`.
pub fn solve_o_k3<F: Field>(d: usize, q: &F, k0: &F, k1: &F, k2: &F) -> Option<F> {
    let p = k0.mul_ref(k1).mul_ref(k2);
    q_pow(q, -(d as i64) - 1).div_ref(&p)
}

fn check_q<F: Field>(q: &F) -> Result<(), RealizationError> {
    if q.passes_q_guard() {
        Ok(())
    } else {
        Err(ScalarError::ForbiddenQ(format!("{q}")).into())
    }
}

/// `q^e` for a `q` already known to be nonzero.
pub fn q_pow<F: Field>(q: &F, e: i64) -> F {
    q.pow(e).expect("q is nonzero")
}

pub fn inv<F: Field>(x: &F) -> F {
    x.inv().expect("parameter is nonzero")
}

/// An element of `ℤ/4`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Twist(u8);

impl Twist {
    pub fn new(eps: i64) -> Self {
        Twist(eps.rem_euclid(4) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn all() -> [Twist; 4] {
        [Twist(0), Twist(1), Twist(2), Twist(3)]
    }
}

impl core::ops::Add for Twist {
    type Output = Twist;
    fn add(self, rhs: Twist) -> Twist {
        Twist((self.0 + rhs.0) % 4)
    }
}

/// The scalars `α, β, γ` by which the central elements act.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralCharacter<F> {
    pub alpha: F,
    pub beta: F,
    pub gamma: F,
}

/// A module for the universal DAHA given by the four generator matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DahaRealization<F> {
    spec: Option<DahaSpec<F>>,
    twist: Twist,
    q: F,
    t: [Matrix<F>; 4],
    t_inv: [Matrix<F>; 4],
    central: Option<[F; 4]>,
}

impl<F: Field> DahaRealization<F> {
    /// Wraps arbitrary generator matrices. No relation is checked; the
    /// central scalars are read off `t_i + t_i^-1` when those are scalar.
    pub fn from_generators(q: F, t: [Matrix<F>; 4]) -> Result<Self, RealizationError> {
        let n = t[0].rows();
        if t.iter().any(|m| !m.is_square() || m.rows() != n) || n == 0 {
            return Err(RealizationError::Shape);
        }
        let mut invs = Vec::with_capacity(4);
        for (i, m) in t.iter().enumerate() {
            invs.push(inverse(m).map_err(|_| RealizationError::SingularGenerator(i))?);
        }
        let t_inv: [Matrix<F>; 4] = invs.try_into().expect("four inverses");
        let central: Option<Vec<F>> = (0..4).map(|i| (&t[i] + &t_inv[i]).as_scalar()).collect();
        Ok(DahaRealization {
            spec: None,
            twist: Twist::default(),
            q,
            t,
            t_inv,
            central: central.map(|c| c.try_into().expect("four scalars")),
        })
    }

    pub(crate) fn from_spec(spec: DahaSpec<F>, t: [Matrix<F>; 4]) -> Result<Self, RealizationError> {
        let mut m = Self::from_generators(spec.q.clone(), t)?;
        m.central = Some(core::array::from_fn(|i| spec.k[i].clone() + &inv(&spec.k[i])));
        m.spec = Some(spec);
        Ok(m)
    }

    pub fn spec(&self) -> Option<&DahaSpec<F>> {
        self.spec.as_ref()
    }

    pub fn twist_label(&self) -> Twist {
        self.twist
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.t[0].rows()
    }

    pub fn t(&self, i: usize) -> &Matrix<F> {
        &self.t[i]
    }

    pub fn t_inv(&self, i: usize) -> &Matrix<F> {
        &self.t_inv[i]
    }

    pub fn generators(&self) -> &[Matrix<F>; 4] {
        &self.t
    }

    /// Scalars `c_i` by which `t_i + t_i^-1` act, when known.
    pub fn central(&self) -> Option<&[F; 4]> {
        self.central.as_ref()
    }

    /// Replaces generator `i` (and its cached inverse). Used to build
    /// deliberately corrupted modules.
    pub fn with_generator(&self, i: usize, m: Matrix<F>) -> Result<Self, RealizationError> {
        let mut t = self.t.clone();
        t[i] = m;
        let mut out = Self::from_generators(self.q.clone(), t)?;
        out.spec = self.spec.clone();
        out.twist = self.twist;
        Ok(out)
    }

    /// `t_i t_j + (t_i t_j)^-1`.
    pub fn symmetric_pair(&self, i: usize, j: usize) -> Matrix<F> {
        &(&self.t[i] * &self.t[j]) + &(&self.t_inv[j] * &self.t_inv[i])
    }
}

/// The module twisted by `eps`: `t_i` acts as the original `t_(i+eps)`.
pub fn twist<F: Field>(m: &DahaRealization<F>, eps: Twist) -> DahaRealization<F> {
    let e = eps.value() as usize;
    let rot = |i: usize| (i + e) % 4;
    DahaRealization {
        spec: m.spec.clone(),
        twist: m.twist + eps,
        q: m.q.clone(),
        t: core::array::from_fn(|i| m.t[rot(i)].clone()),
        t_inv: core::array::from_fn(|i| m.t_inv[rot(i)].clone()),
        central: m
            .central
            .as_ref()
            .map(|c| core::array::from_fn(|i| c[rot(i)].clone())),
    }
}

/// A module for the universal Askey-Wilson algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AwRealization<F> {
    pub q: F,
    pub a: Matrix<F>,
    pub b: Matrix<F>,
    pub c: Matrix<F>,
    pub character: Option<CentralCharacter<F>>,
}

impl<F: Field> AwRealization<F> {
    pub fn new(q: F, a: Matrix<F>, b: Matrix<F>, c: Matrix<F>) -> Result<Self, RealizationError> {
        let n = a.rows();
        if [&a, &b, &c].iter().any(|m| !m.is_square() || m.rows() != n) || n == 0 {
            return Err(RealizationError::Shape);
        }
        Ok(AwRealization { q, a, b, c, character: None })
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn generators(&self) -> [Matrix<F>; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }
}

/// Pushforward along `A ↦ t1 t0 + (t1 t0)^-1`, `B ↦ t3 t0 + (t3 t0)^-1`,
/// `C ↦ t2 t0 + (t2 t0)^-1`.
pub fn push_to_aw<F: Field>(m: &DahaRealization<F>) -> AwRealization<F> {
    AwRealization {
        q: m.q.clone(),
        a: m.symmetric_pair(1, 0),
        b: m.symmetric_pair(3, 0),
        c: m.symmetric_pair(2, 0),
        character: None,
    }
}

/// Anything whose generators can be named in a word.
pub trait Realization<F: Field> {
    fn dim(&self) -> usize;
    /// The matrix of a single symbol, e.g. `t2`, `t2^-1` or `A`.
    fn symbol(&self, s: &str) -> Option<Matrix<F>>;
}

impl<F: Field> Realization<F> for DahaRealization<F> {
    fn dim(&self) -> usize {
        DahaRealization::dim(self)
    }

    fn symbol(&self, s: &str) -> Option<Matrix<F>> {
        let s = s.trim();
        let (base, inverted) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let i: usize = base.strip_prefix('t')?.parse().ok()?;
        if i > 3 {
            return None;
        }
        Some(if inverted { self.t_inv[i].clone() } else { self.t[i].clone() })
    }
}

impl<F: Field> Realization<F> for AwRealization<F> {
    fn dim(&self) -> usize {
        AwRealization::dim(self)
    }

    fn symbol(&self, s: &str) -> Option<Matrix<F>> {
        match s.trim() {
            "A" => Some(self.a.clone()),
            "B" => Some(self.b.clone()),
            "C" => Some(self.c.clone()),
            _ => None,
        }
    }
}

/// The product `x1 x2 ... xk` of the named generators; the empty word is the
/// identity.
pub fn evaluate_word<F: Field, R: Realization<F> + ?Sized>(
    m: &R,
    word: &[&str],
) -> Result<Matrix<F>, RealizationError> {
    let mut acc = Matrix::identity(m.dim());
    for s in word {
        let g = m
            .symbol(s)
            .ok_or_else(|| RealizationError::UnknownSymbol((*s).into()))?;
        acc = &acc * &g;
    }
    Ok(acc)
}
