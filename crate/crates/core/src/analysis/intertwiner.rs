use alloc::vec::Vec;

use crate::linalg::{determinant, nullspace, Matrix};
use crate::scalar::Field;

/// A basis of `{ X : X g1[i] = g2[i] X for all i }`.
pub fn intertwining_space<F: Field>(g1: &[Matrix<F>], g2: &[Matrix<F>]) -> Vec<Matrix<F>> {
    assert_eq!(g1.len(), g2.len(), "generator lists must pair up");
    let n = g1.first().map_or(0, Matrix::rows);
    let m = g2.first().map_or(0, Matrix::rows);
    let unknowns = m * n;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for (a, b) in g1.iter().zip(g2) {
        // Entry (i, j) of X a - b X, with X of shape m x n.
        for i in 0..m {
            for j in 0..n {
                let mut row = alloc::vec![F::zero(); unknowns];
                for k in 0..n {
                    if !a[(k, j)].is_zero() {
                        row[i * n + k] += &a[(k, j)];
                    }
                }
                for k in 0..m {
                    if !b[(i, k)].is_zero() {
                        row[k * n + j] -= &b[(i, k)];
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sol = if rows.is_empty() {
        crate::linalg::Subspace::full(unknowns)
    } else {
        nullspace(&Matrix::from_rows(rows).expect("rows share a length"))
    };
    sol.basis()
        .iter()
        .map(|v| Matrix::from_fn(m, n, |i, j| v[i * n + j].clone()))
        .collect()
}

/// An invertible `X` with `X g1[i] = g2[i] X` for every generator, if one
/// turns up among the basis of solutions, their sum, or small integer
/// combinations of them.
pub fn find_intertwiner<F: Field>(g1: &[Matrix<F>], g2: &[Matrix<F>]) -> Option<Matrix<F>> {
    let n = g1.first()?.rows();
    if g2.first()?.rows() != n {
        return None;
    }
    let space = intertwining_space(g1, g2);
    let invertible = |x: &Matrix<F>| !determinant(x).is_zero();
    if let Some(x) = space.iter().find(|x| invertible(x)) {
        return Some(x.clone());
    }
    if space.len() < 2 {
        return None;
    }
    for round in 1..=8i64 {
        let mut acc = Matrix::zeros(n, n);
        for (idx, x) in space.iter().enumerate() {
            let c = F::from_i64(1 + (round * (idx as i64 + 3)) % 7);
            acc = &acc + &x.scale(&c);
        }
        if invertible(&acc) {
            return Some(acc);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::inverse;
    use crate::realizations::{build_daha, DahaSpec};
    use crate::scalar::Rational;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn frac(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn identity_intertwines_a_module_with_itself() {
        let m = build_daha(&DahaSpec::e(3, r(2), [frac(1, 4), r(2), r(3), r(5)]).unwrap()).unwrap();
        let x = find_intertwiner(m.generators(), m.generators()).unwrap();
        assert!(x.as_scalar().is_some());
    }

    #[test]
    fn inverting_k1_gives_an_isomorphic_module() {
        let a = build_daha(&DahaSpec::e(3, r(2), [frac(1, 4), r(2), r(3), r(5)]).unwrap()).unwrap();
        let b = build_daha(&DahaSpec::e(3, r(2), [frac(1, 4), frac(1, 2), r(3), r(5)]).unwrap())
            .unwrap();
        let x = find_intertwiner(a.generators(), b.generators()).unwrap();
        let xi = inverse(&x).unwrap();
        for i in 0..4 {
            assert_eq!(&(&x * a.t(i)) * &xi, *b.t(i));
        }
    }

    #[test]
    fn different_central_scalars_block_intertwiners() {
        let a = build_daha(&DahaSpec::e(1, r(2), [frac(1, 2), r(2), r(3), r(5)]).unwrap()).unwrap();
        let b = build_daha(&DahaSpec::e(1, r(2), [frac(1, 2), r(7), r(3), r(5)]).unwrap()).unwrap();
        assert!(find_intertwiner(a.generators(), b.generators()).is_none());
    }
}
