//! Closed-form predicates on module parameters.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::Matrix;
use crate::realizations::{
    inv, q_pow, AwRealization, DahaFamily, DahaRealization, DahaSpec, Twist, VdSpec,
};
use crate::scalar::Field;

/// Exponents `hi, hi - 2, ..., lo`; empty when `hi < lo`.
pub fn stepped_exponents(hi: i64, lo: i64) -> impl Iterator<Item = i64> {
    (0..)
        .map(move |s| hi - 2 * s)
        .take_while(move |&e| e >= lo)
}

/// Whether `x = q^e` for some `e` in `exps`.
pub fn among_q_powers<F: Field>(x: &F, q: &F, exps: impl IntoIterator<Item = i64>) -> bool {
    exps.into_iter().any(|e| *x == q_pow(q, e))
}

fn mul3<F: Field>(a: &F, b: &F, c: &F) -> F {
    a.mul_ref(b).mul_ref(c)
}

/// `abc, a^-1 bc, ab^-1 c, abc^-1` avoid `q^(2i-d-1)` for `i = 1..d`.
pub fn criterion_vd<F: Field>(spec: &VdSpec<F>) -> bool {
    let d = spec.d as i64;
    let (a, b, c) = (&spec.a, &spec.b, &spec.c);
    let products = [
        mul3(a, b, c),
        mul3(&inv(a), b, c),
        mul3(a, &inv(b), c),
        mul3(a, b, &inv(c)),
    ];
    let exps: Vec<i64> = (1..=d).map(|i| 2 * i - d - 1).collect();
    !products
        .iter()
        .any(|x| among_q_powers(x, &spec.q, exps.iter().copied()))
}

/// `k0k1k2k3` and its three single-inversion variants avoid `q^-i` for odd
/// `i <= d`.
pub fn criterion_e<F: Field>(spec: &DahaSpec<F>) -> bool {
    let [k0, k1, k2, k3] = &spec.k;
    let products = [
        mul3(k0, k1, k2).mul_ref(k3),
        mul3(k0, &inv(k1), k2).mul_ref(k3),
        mul3(k0, k1, &inv(k2)).mul_ref(k3),
        mul3(k0, k1, k2).mul_ref(&inv(k3)),
    ];
    let exps: Vec<i64> = (1..=spec.d as i64).filter(|i| i % 2 == 1).map(|i| -i).collect();
    !products
        .iter()
        .any(|x| among_q_powers(x, &spec.q, exps.iter().copied()))
}

/// `k_i^2` avoids `q^-i` for even `i` in `2..=d`.
pub fn criterion_o<F: Field>(spec: &DahaSpec<F>) -> bool {
    let exps: Vec<i64> = (2..=spec.d as i64).filter(|i| i % 2 == 0).map(|i| -i).collect();
    !spec
        .k
        .iter()
        .any(|k| among_q_powers(&k.mul_ref(k), &spec.q, exps.iter().copied()))
}

pub fn criterion_daha<F: Field>(spec: &DahaSpec<F>) -> bool {
    match spec.family {
        DahaFamily::E => criterion_e(spec),
        DahaFamily::O => criterion_o(spec),
    }
}

/// An operator whose diagonalizability a predicate speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    A,
    B,
    C,
    /// `t_i t_j`.
    Product(u8, u8),
    /// `t_i t_j + (t_i t_j)^-1`.
    SymmetricPair(u8, u8),
}

impl Operator {
    /// The operator on a DAHA-module; `A, B, C` act through the pushforward.
    pub fn on_daha<F: Field>(&self, m: &DahaRealization<F>) -> Matrix<F> {
        match *self {
            Operator::A => m.symmetric_pair(1, 0),
            Operator::B => m.symmetric_pair(3, 0),
            Operator::C => m.symmetric_pair(2, 0),
            Operator::Product(i, j) => m.t(i as usize) * m.t(j as usize),
            Operator::SymmetricPair(i, j) => m.symmetric_pair(i as usize, j as usize),
        }
    }

    pub fn on_aw<F: Field>(&self, m: &AwRealization<F>) -> Option<Matrix<F>> {
        match self {
            Operator::A => Some(m.a.clone()),
            Operator::B => Some(m.b.clone()),
            Operator::C => Some(m.c.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::A => f.write_str("A"),
            Operator::B => f.write_str("B"),
            Operator::C => f.write_str("C"),
            Operator::Product(i, j) => write!(f, "t{i}t{j}"),
            Operator::SymmetricPair(i, j) => write!(f, "t{i}t{j}+(t{i}t{j})^-1"),
        }
    }
}

/// What a predicate claims about its operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    /// Predicate holds iff each operator is diagonalizable, iff each is
    /// multiplicity-free.
    DiagonalizableIff,
    /// Predicate true implies each operator is diagonalizable. Nothing is
    /// claimed when it is false.
    DiagonalizableIfTrue,
    /// Predicate holds iff each operator is multiplicity-free on every
    /// composition factor of the pushforward.
    FactorsMultiplicityFreeIff,
}

/// A named closed-form predicate paired with the matrix-level property it
/// predicts on the module twisted by `twist`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicate {
    pub id: String,
    pub statement: String,
    pub value: bool,
    pub claim: Claim,
    pub twist: Twist,
    pub operators: Vec<Operator>,
}

fn range_text(hi: &str, lo: &str) -> String {
    format!("q^({hi}), ..., q^({lo})")
}

/// Predicates for `A`, `B`, `C` on an irreducible `V_d(a, b, c)`.
pub fn vd_predicates<F: Field>(spec: &VdSpec<F>) -> Vec<Predicate> {
    let d = spec.d as i64;
    let set: Vec<i64> = stepped_exponents(2 * d - 2, 2 - 2 * d).collect();
    [("a", &spec.a, Operator::A), ("b", &spec.b, Operator::B), ("c", &spec.c, Operator::C)]
        .into_iter()
        .map(|(name, x, op)| Predicate {
            id: format!("vd_{op}_diagonalizable"),
            statement: format!(
                "{name}^2 not among {} <=> {op} diagonalizable <=> {op} multiplicity-free",
                range_text("2d-2", "2-2d")
            ),
            value: !among_q_powers(&x.mul_ref(x), &spec.q, set.iter().copied()),
            claim: Claim::DiagonalizableIff,
            twist: Twist::default(),
            operators: vec![op],
        })
        .collect()
}

/// Predicates on an irreducible `E` or `O` module.
pub fn daha_predicates<F: Field>(spec: &DahaSpec<F>) -> Vec<Predicate> {
    match spec.family {
        DahaFamily::E => e_predicates(spec),
        DahaFamily::O => o_predicates(spec),
    }
}

fn e_predicates<F: Field>(spec: &DahaSpec<F>) -> Vec<Predicate> {
    let d = spec.d as i64;
    let q = &spec.q;
    let sq: Vec<F> = spec.k.iter().map(|k| k.mul_ref(k)).collect();
    let full: Vec<i64> = stepped_exponents(d - 1, 1 - d).collect();
    let reduced: Vec<i64> = stepped_exponents(d - 3, 3 - d).collect();
    let avoids = |j: usize, set: &[i64]| !among_q_powers(&sq[j], q, set.iter().copied());
    let full_text = range_text("d-1", "1-d");
    let reduced_text = range_text("d-3", "3-d");
    let mut out = Vec::new();
    for j in 1..4u8 {
        out.push(Predicate {
            id: format!("e_t{j}t0_diagonalizable"),
            statement: format!(
                "k{j}^2 not among {full_text} <=> t{j}t0, t0t{j} diagonalizable <=> multiplicity-free"
            ),
            value: avoids(j as usize, &full),
            claim: Claim::DiagonalizableIff,
            twist: Twist::default(),
            operators: vec![Operator::Product(j, 0), Operator::Product(0, j)],
        });
    }
    for (j, (x, y)) in [(1u8, (2u8, 3u8)), (2, (1, 3)), (3, (1, 2))] {
        out.push(Predicate {
            id: format!("e_pair_t{x}t{y}_diagonalizable_if"),
            statement: format!(
                "k{j}^2 not among {reduced_text} => t{x}t{y}+(t{x}t{y})^-1 and t{y}t{x}+(t{y}t{x})^-1 diagonalizable"
            ),
            value: avoids(j as usize, &reduced),
            claim: Claim::DiagonalizableIfTrue,
            twist: Twist::default(),
            operators: vec![Operator::SymmetricPair(x, y), Operator::SymmetricPair(y, x)],
        });
    }
    // For each twist: (operator, k index, uses the full range).
    let table: [[(Operator, usize, bool); 3]; 4] = [
        [(Operator::A, 1, true), (Operator::B, 3, true), (Operator::C, 2, true)],
        [(Operator::A, 3, false), (Operator::B, 1, true), (Operator::C, 2, false)],
        [(Operator::A, 1, false), (Operator::B, 3, false), (Operator::C, 2, true)],
        [(Operator::A, 3, true), (Operator::B, 1, false), (Operator::C, 2, false)],
    ];
    for (eps, row) in table.iter().enumerate() {
        for &(op, j, is_full) in row {
            let (set, text) = if is_full {
                (&full, &full_text)
            } else {
                (&reduced, &reduced_text)
            };
            out.push(Predicate {
                id: format!("e_factors_eps{eps}_{op}"),
                statement: format!(
                    "k{j}^2 not among {text} <=> {op} multiplicity-free on every composition factor of the twist by {eps}"
                ),
                value: avoids(j, set),
                claim: Claim::FactorsMultiplicityFreeIff,
                twist: Twist::new(eps as i64),
                operators: vec![op],
            });
        }
    }
    out
}

fn o_predicates<F: Field>(spec: &DahaSpec<F>) -> Vec<Predicate> {
    let d = spec.d as i64;
    let q = &spec.q;
    let k0sq = spec.k[0].mul_ref(&spec.k[0]);
    let sq: Vec<F> = spec.k.iter().map(|k| k.mul_ref(k)).collect();
    let mixed: Vec<F> = sq.iter().map(|s| s.mul_ref(&k0sq)).collect();
    let to_2d: Vec<i64> = stepped_exponents(-2, -2 * d).collect();
    let to_2d_less: Vec<i64> = stepped_exponents(-2, 2 - 2 * d).collect();
    let from_6: Vec<i64> = stepped_exponents(-6, 2 - 2 * d).collect();
    let mut out = Vec::new();
    for j in 1..4u8 {
        out.push(Predicate {
            id: format!("o_t{j}t0_diagonalizable"),
            statement: format!(
                "k0^2 k{j}^2 not among {} <=> t{j}t0, t0t{j} diagonalizable <=> multiplicity-free",
                range_text("-2", "-2d")
            ),
            value: !among_q_powers(&mixed[j as usize], q, to_2d.iter().copied()),
            claim: Claim::DiagonalizableIff,
            twist: Twist::default(),
            operators: vec![Operator::Product(j, 0), Operator::Product(0, j)],
        });
    }
    let pairing = [(Operator::A, 1usize), (Operator::B, 3), (Operator::C, 2)];
    for (op, j) in pairing {
        out.push(Predicate {
            id: format!("o_{op}_diagonalizable_if"),
            statement: format!(
                "k0^2 k{j}^2 not among {} => {op} diagonalizable",
                range_text("-2", "2-2d")
            ),
            value: !among_q_powers(&mixed[j], q, to_2d_less.iter().copied()),
            claim: Claim::DiagonalizableIfTrue,
            twist: Twist::default(),
            operators: vec![op],
        });
    }
    let k0_is_pm1 = k0sq.is_one();
    for (op, j) in pairing {
        let (value, statement) = if k0_is_pm1 {
            (
                !among_q_powers(&sq[j], q, from_6.iter().copied()),
                format!(
                    "k0^2 = 1: k{j}^2 not among {} <=> {op} multiplicity-free on every composition factor",
                    range_text("-6", "2-2d")
                ),
            )
        } else {
            (
                !among_q_powers(&mixed[j], q, to_2d_less.iter().copied()),
                format!(
                    "k0^2 != 1: k0^2 k{j}^2 not among {} <=> {op} multiplicity-free on every composition factor",
                    range_text("-2", "2-2d")
                ),
            )
        };
        out.push(Predicate {
            id: format!("o_factors_{op}"),
            statement,
            value,
            claim: Claim::FactorsMultiplicityFreeIff,
            twist: Twist::default(),
            operators: vec![op],
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn frac(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn exponent_ranges() {
        assert_eq!(stepped_exponents(4, -4).collect::<Vec<_>>(), [4, 2, 0, -2, -4]);
        assert_eq!(stepped_exponents(-6, -2).count(), 0);
        assert_eq!(stepped_exponents(0, 0).collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn vd_criterion_examples() {
        assert!(criterion_vd(&VdSpec::new(0, r(2), r(1), r(1), r(1)).unwrap()));
        // {q^(2i-3)} = {1/2, 2} and abc = 2.
        assert!(!criterion_vd(&VdSpec::new(2, r(2), r(1), r(1), r(2)).unwrap()));
        assert!(criterion_vd(&VdSpec::new(2, r(2), r(3), r(3), r(3)).unwrap()));
    }

    #[test]
    fn daha_criterion_examples() {
        let bad = DahaSpec::e(1, r(4), [frac(1, 4), r(1), r(1), r(1)]).unwrap();
        assert!(!criterion_e(&bad));
        let good = DahaSpec::e(1, r(4), [frac(1, 4), r(2), r(3), r(5)]).unwrap();
        assert!(criterion_e(&good));
        // k3 = q^-3 / (k0 k1 k2) = 1/8 / 30.
        let o = DahaSpec::o(2, r(2), [r(2), r(3), r(5), frac(1, 240)]).unwrap();
        assert!(criterion_o(&o));
        let o_bad = DahaSpec::o(2, r(2), [r(2), frac(1, 2), r(5), frac(1, 40)]).unwrap();
        assert!(!criterion_o(&o_bad));
    }

    #[test]
    fn e_d1_range_is_the_single_power_q0() {
        let spec = DahaSpec::e(1, r(2), [frac(1, 2), r(1), r(3), r(5)]).unwrap();
        let preds = daha_predicates(&spec);
        let p = preds.iter().find(|p| p.id == "e_t1t0_diagonalizable").unwrap();
        assert!(!p.value);
        let p = preds.iter().find(|p| p.id == "e_t2t0_diagonalizable").unwrap();
        assert!(p.value);
    }

    #[test]
    fn o_d2_boundary() {
        // k0^2 k1^2 = 4 * (1/16) = q^-2.
        let spec = DahaSpec::o(2, r(2), [r(2), frac(1, 4), r(3), frac(1, 12)]).unwrap();
        let preds = daha_predicates(&spec);
        let p = preds.iter().find(|p| p.id == "o_t1t0_diagonalizable").unwrap();
        assert!(!p.value);
    }

    #[test]
    fn d0_predicates_are_all_true() {
        let vd = VdSpec::new(0, r(2), r(1), r(1), r(1)).unwrap();
        assert!(vd_predicates(&vd).iter().all(|p| p.value));
        let o = DahaSpec::o(0, r(2), [r(1), r(1), r(1), frac(1, 2)]).unwrap();
        assert!(daha_predicates(&o).iter().all(|p| p.value));
    }
}
