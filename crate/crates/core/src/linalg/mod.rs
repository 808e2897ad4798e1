//! Exact dense linear algebra over any [`Field`].

mod matrix;
mod subspace;

use alloc::vec;
use alloc::vec::Vec;

pub use matrix::Matrix;
pub use subspace::Subspace;
pub(crate) use subspace::unit_vector;

use crate::poly::Poly;
use crate::roots::RootSet;
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix rows have different lengths")]
    Shape,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Reduced row echelon form and the pivot column of each nonzero row.
///
/// The pivot of a row is its first nonzero entry and is scaled to one, so
/// the result is canonical.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].inv().expect("pivot is nonzero");
        for j in c..a.cols() {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = a[(r, j)].mul_ref(&inv);
            }
        }
        for i in 0..a.rows() {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..a.cols() {
                if !a[(r, j)].is_zero() {
                    let t = f.mul_ref(&a[(r, j)]);
                    a[(i, j)] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

/// Right kernel `{v : M v = 0}`.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let mut basis = Vec::new();
    let mut pi = 0;
    for free in 0..n {
        if pi < pivots.len() && pivots[pi] == free {
            pi += 1;
            continue;
        }
        let mut v = vec![F::zero(); n];
        v[free] = F::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r[(row, free)].clone();
        }
        basis.push(v);
    }
    Subspace::from_vectors(n, basis)
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
    let n = m.dim();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            F::one()
        } else {
            F::zero()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(LinalgError::Singular);
    }
    Ok(Matrix::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
}

/// Determinant by fraction-carrying Gaussian elimination.
pub fn determinant<F: Field>(m: &Matrix<F>) -> F {
    let n = m.dim();
    let mut a = m.clone();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap_rows(p, c);
            det = -det;
        }
        let piv = a[(c, c)].clone();
        det = det.mul_ref(&piv);
        let inv = piv.inv().expect("nonzero pivot");
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].mul_ref(&inv);
            for j in c..n {
                if !a[(c, j)].is_zero() {
                    let t = f.mul_ref(&a[(c, j)]);
                    a[(i, j)] -= &t;
                }
            }
        }
    }
    det
}

/// `det(xI - M)` by Berkowitz's division-free recursion on trailing blocks.
pub fn char_poly<F: Field>(m: &Matrix<F>) -> Poly<F> {
    let n = m.dim();
    // Coefficients of the trailing block's polynomial, highest degree first.
    let mut vec_sub: Vec<F> = vec![F::one()];
    for k in (0..n).rev() {
        let size = n - k - 1;
        let a = &m[(k, k)];
        let row: Vec<F> = (k + 1..n).map(|j| m[(k, j)].clone()).collect();
        let mut d: Vec<F> = (k + 1..n).map(|i| m[(i, k)].clone()).collect();
        let mut diags = vec![F::one(), -a.clone()];
        for step in 0..size {
            if step > 0 {
                d = (0..size)
                    .map(|i| {
                        let mut acc = F::zero();
                        for (j, dj) in d.iter().enumerate() {
                            let e = &m[(k + 1 + i, k + 1 + j)];
                            if !e.is_zero() && !dj.is_zero() {
                                acc += &e.mul_ref(dj);
                            }
                        }
                        acc
                    })
                    .collect();
            }
            let mut dot = F::zero();
            for (r, x) in row.iter().zip(&d) {
                if !r.is_zero() && !x.is_zero() {
                    dot += &r.mul_ref(x);
                }
            }
            diags.push(-dot);
        }
        // Toeplitz (size+2) x (size+1) times vec_sub.
        let out: Vec<F> = (0..size + 2)
            .map(|i| {
                let mut acc = F::zero();
                for (j, v) in vec_sub.iter().enumerate().take(i + 1) {
                    let t = &diags[i - j];
                    if !t.is_zero() && !v.is_zero() {
                        acc += &t.mul_ref(v);
                    }
                }
                acc
            })
            .collect();
        vec_sub = out;
    }
    vec_sub.reverse();
    Poly::from_coeffs(vec_sub)
}

/// `p(M)` by Horner's scheme.
pub fn eval_poly_at_matrix<F: Field>(p: &Poly<F>, m: &Matrix<F>) -> Matrix<F> {
    let n = m.dim();
    p.coeffs().iter().rev().fold(Matrix::zeros(n, n), |acc, c| {
        &(&acc * m) + &Matrix::scalar(n, c.clone())
    })
}

/// Monic annihilator of `v` of least degree under `m`.
fn krylov_annihilator<F: Field>(m: &Matrix<F>, v: &[F]) -> Poly<F> {
    let n = m.dim();
    let mut chain: Vec<Vec<F>> = vec![v.to_vec()];
    let mut span = Subspace::from_vectors(n, chain.clone());
    loop {
        let next = m.mul_vec(chain.last().expect("nonempty"));
        if span.contains(&next) {
            chain.push(next);
            break;
        }
        span = span.join(&Subspace::from_vectors(n, vec![next.clone()]));
        chain.push(next);
    }
    let k = Matrix::from_columns(n, &chain);
    let kernel = nullspace(&k);
    debug_assert_eq!(kernel.dim(), 1);
    Poly::from_coeffs(kernel.basis()[0].clone()).monic()
}

/// Least common multiple of the annihilators of the standard basis vectors.
pub fn min_poly<F: Field>(m: &Matrix<F>) -> Poly<F> {
    let n = m.dim();
    let mut acc = Poly::one();
    for j in 0..n {
        let mut e = vec![F::zero(); n];
        e[j] = F::one();
        let ann = krylov_annihilator(m, &e);
        if !ann.divides(&acc) {
            acc = acc.lcm(&ann);
        }
        if acc.degree() == Some(n) {
            break;
        }
    }
    acc
}

/// Diagonalizable over the algebraic closure: the minimal polynomial is
/// squarefree.
pub fn is_diagonalizable<F: Field>(m: &Matrix<F>) -> bool {
    min_poly(m).is_squarefree()
}

/// Every eigenvalue has algebraic multiplicity one.
pub fn is_multiplicity_free<F: Field>(m: &Matrix<F>) -> bool {
    char_poly(m).is_squarefree()
}

pub fn eigenspace<F: Field>(m: &Matrix<F>, lambda: &F) -> Subspace<F> {
    let n = m.dim();
    nullspace(&(m - &Matrix::scalar(n, lambda.clone())))
}

/// Roots of `p` lying in the working field.
pub fn rational_roots<F: Field>(p: &Poly<F>) -> RootSet<F> {
    F::find_roots(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect())
            .unwrap()
    }

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::from_coeffs(cs.iter().map(|&c| r(c)).collect())
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&Matrix::<Rational>::identity(3)).unwrap(), Matrix::identity(3));
        let d = Matrix::diagonal(&[r(2), Rational::new(1, 3).unwrap()]);
        let di = Matrix::diagonal(&[Rational::new(1, 2).unwrap(), r(3)]);
        assert_eq!(inverse(&d).unwrap(), di);
        assert_eq!(inverse(&m(&[&[1, 1], &[0, 0]])), Err(LinalgError::Singular));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&Matrix::<Rational>::identity(3)), r(1));
        let k = Rational::new(1, 4).unwrap();
        assert_eq!(
            determinant(&Matrix::diagonal(&[k.clone(), k])),
            Rational::new(1, 16).unwrap()
        );
        assert_eq!(determinant(&m(&[&[0, 2, 1], &[3, 0, 1], &[1, 1, 1]])), r(-1));
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&Matrix::<Rational>::identity(2)), p(&[1, -2, 1]));
        assert_eq!(char_poly(&Matrix::diagonal(&[r(1), r(2)])), p(&[2, -3, 1]));
        assert_eq!(char_poly(&m(&[&[0, 1], &[0, 0]])), p(&[0, 0, 1]));
        // Expanded by hand: x^3 - 2x^2 - 9x + 10.
        let a = m(&[&[1, 2, 0], &[3, 0, 1], &[0, 4, 1]]);
        assert_eq!(char_poly(&a), p(&[10, -9, -2, 1]));
    }

    #[test]
    fn min_poly_examples() {
        assert_eq!(min_poly(&Matrix::<Rational>::identity(3)), p(&[-1, 1]));
        assert_eq!(min_poly(&m(&[&[0, 1], &[0, 0]])), p(&[0, 0, 1]));
        assert_eq!(min_poly(&Matrix::diagonal(&[r(1), r(1), r(2)])), p(&[2, -3, 1]));
    }

    #[test]
    fn diagonalizability_examples() {
        assert!(is_diagonalizable(&Matrix::diagonal(&[r(1), r(1), r(2)])));
        assert!(!is_diagonalizable(&m(&[&[0, 1], &[0, 0]])));
        assert!(is_multiplicity_free(&Matrix::diagonal(&[r(1), r(2), r(3)])));
        assert!(!is_multiplicity_free(&Matrix::diagonal(&[r(1), r(1)])));
        assert!(is_multiplicity_free(&Matrix::<Rational>::identity(1)));
    }

    #[test]
    fn eigenspace_examples() {
        assert_eq!(eigenspace(&Matrix::<Rational>::identity(2), &r(1)).dim(), 2);
        let d = Matrix::diagonal(&[r(1), r(2)]);
        assert_eq!(eigenspace(&d, &r(3)).dim(), 0);
        let e = eigenspace(&d, &r(2));
        assert_eq!(e.basis(), &[vec![r(0), r(1)]]);
    }

    #[test]
    fn roots_wrapper() {
        let rs = rational_roots(&p(&[2, -3, 1]));
        assert!(rs.splits);
        assert_eq!(rs.roots, vec![(r(1), 1), (r(2), 1)]);
        let rs = rational_roots(&p(&[1, 0, 1]));
        assert!(!rs.splits && rs.roots.is_empty());
    }
}
