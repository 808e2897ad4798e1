use alloc::format;
use alloc::string::String;

use super::VerificationReport;
use crate::linalg::Matrix;
use crate::realizations::{AwRealization, CentralCharacter, DahaRealization};
use crate::scalar::Field;

fn first_difference<F: Field>(lhs: &Matrix<F>, rhs: &Matrix<F>) -> String {
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            if lhs[(i, j)] != rhs[(i, j)] {
                return format!("entry ({i},{j}): {} vs {}", lhs[(i, j)], rhs[(i, j)]);
            }
        }
    }
    String::new()
}

fn outcome<F: Field>(lhs: &Matrix<F>, rhs: &Matrix<F>) -> (bool, String) {
    if lhs == rhs {
        (true, String::from("exact"))
    } else {
        (false, first_difference(lhs, rhs))
    }
}

/// Checks the defining relations of the universal DAHA on the given matrices:
/// `t_i t_i^-1 = t_i^-1 t_i = 1`, centrality of `t_i + t_i^-1` and
/// `t0 t1 t2 t3 = q^-1`.
pub fn verify_daha_relations<F: Field>(m: &DahaRealization<F>) -> VerificationReport {
    let n = m.dim();
    let id = Matrix::<F>::identity(n);
    let mut report = VerificationReport::new();
    for i in 0..4 {
        let left = m.t(i) * m.t_inv(i);
        let right = m.t_inv(i) * m.t(i);
        let (pass, detail) = if left != id {
            outcome(&left, &id)
        } else {
            outcome(&right, &id)
        };
        report.push(
            format!("inverse_t{i}"),
            format!("t{i} t{i}^-1 = t{i}^-1 t{i} = 1"),
            pass,
            detail,
        );
    }
    for i in 0..4 {
        let s = m.t(i) + m.t_inv(i);
        let mut pass = true;
        let mut detail = String::from("commutes with t0..t3");
        for j in 0..4 {
            let comm = s.commutator(m.t(j));
            if !comm.is_zero() {
                pass = false;
                detail = format!("fails to commute with t{j}");
                break;
            }
        }
        if pass {
            if let Some(c) = m.central() {
                if s != Matrix::scalar(n, c[i].clone()) {
                    pass = false;
                    detail = format!("does not act as the scalar {}", c[i]);
                } else {
                    detail = format!("acts as {}", c[i]);
                }
            }
        }
        report.push(
            format!("central_t{i}"),
            format!("t{i} + t{i}^-1 is central"),
            pass,
            detail,
        );
    }
    let prod = &(&(m.t(0) * m.t(1)) * m.t(2)) * m.t(3);
    let q_inv = m.q().inv().expect("q is nonzero");
    let (pass, detail) = outcome(&prod, &Matrix::scalar(n, q_inv));
    report.push("product_t0t1t2t3", "t0 t1 t2 t3 = q^-1", pass, detail);
    report
}

/// The division-free central elements: `(q^2 - q^-2) A + q BC - q^-1 CB` and
/// its cyclic images under `A -> B -> C -> A`.
pub fn aw_central_elements<F: Field>(m: &AwRealization<F>) -> [Matrix<F>; 3] {
    let q = &m.q;
    let qi = q.inv().expect("q is nonzero");
    let diff = q.mul_ref(q) - &qi.mul_ref(&qi);
    let y = |x: &Matrix<F>, y: &Matrix<F>, z: &Matrix<F>| {
        &(&x.scale(&diff) + &(y * z).scale(q)) - &(z * y).scale(&qi)
    };
    [
        y(&m.a, &m.b, &m.c),
        y(&m.b, &m.c, &m.a),
        y(&m.c, &m.a, &m.b),
    ]
}

/// The scalars `α, β, γ` when all three central elements act as scalars.
pub fn aw_central_character<F: Field>(m: &AwRealization<F>) -> Option<CentralCharacter<F>> {
    let q = &m.q;
    let qi = q.inv().expect("q is nonzero");
    let denom = (q.clone() - &qi).inv()?;
    let [ya, yb, yc] = aw_central_elements(m);
    Some(CentralCharacter {
        alpha: ya.as_scalar()?.mul_ref(&denom),
        beta: yb.as_scalar()?.mul_ref(&denom),
        gamma: yc.as_scalar()?.mul_ref(&denom),
    })
}

/// Checks that the three central elements of the universal Askey-Wilson
/// algebra commute with `A, B, C`, and when a character is attached to the
/// realization that they act by it.
pub fn verify_aw_centrality<F: Field>(m: &AwRealization<F>) -> VerificationReport {
    let mut report = VerificationReport::new();
    let gens = [("A", &m.a), ("B", &m.b), ("C", &m.c)];
    let ys = aw_central_elements(m);
    for (name, y) in ["alpha", "beta", "gamma"].iter().zip(&ys) {
        let bad = gens.iter().find(|(_, g)| !y.commutator(g).is_zero());
        let (pass, detail) = match bad {
            Some((g, _)) => (false, format!("fails to commute with {g}")),
            None => (true, String::from("commutes with A, B, C")),
        };
        report.push(
            format!("central_{name}"),
            format!("the {name} element is central"),
            pass,
            detail,
        );
    }
    if let Some(expected) = &m.character {
        let found = aw_central_character(m);
        let (pass, detail) = match &found {
            Some(ch) if ch == expected => (
                true,
                format!("alpha={}, beta={}, gamma={}", ch.alpha, ch.beta, ch.gamma),
            ),
            Some(ch) => (
                false,
                format!(
                    "found alpha={}, beta={}, gamma={}; expected {}, {}, {}",
                    ch.alpha, ch.beta, ch.gamma, expected.alpha, expected.beta, expected.gamma
                ),
            ),
            None => (false, String::from("central elements are not scalar")),
        };
        report.push(
            "central_character",
            "central elements act by the stated scalars",
            pass,
            detail,
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizations::{build_daha, build_vd, push_to_aw, DahaSpec, VdSpec};
    use crate::scalar::Rational;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn frac(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn e3() -> DahaRealization<Rational> {
        build_daha(&DahaSpec::e(3, r(2), [frac(1, 4), r(2), r(3), r(5)]).unwrap()).unwrap()
    }

    #[test]
    fn daha_relations_hold_and_detect_corruption() {
        let m = e3();
        assert!(verify_daha_relations(&m).all_pass());
        let mut t1 = m.t(1).clone();
        t1[(0, 0)] += &r(1);
        let bad = m.with_generator(1, t1).unwrap();
        let report = verify_daha_relations(&bad);
        assert!(!report.get("central_t1").unwrap().pass);
        assert!(!report.get("product_t0t1t2t3").unwrap().pass);
    }

    #[test]
    fn vd_character_is_recovered() {
        let spec = VdSpec::new(3, r(2), r(3), frac(1, 2), r(5)).unwrap();
        let m = build_vd(&spec).unwrap();
        let report = verify_aw_centrality(&m);
        assert!(report.all_pass(), "{report:?}");
        let mut bad = m.clone();
        bad.a[(0, 1)] += &r(1);
        assert!(!verify_aw_centrality(&bad).all_pass());
    }

    #[test]
    fn pushforward_is_central() {
        let aw = push_to_aw(&e3());
        assert!(verify_aw_centrality(&aw).all_pass());
    }
}
