use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{nullspace, Matrix};
use crate::scalar::Field;

/// A subspace of `F^n` stored as the nonzero rows of its reduced row
/// echelon form, so two subspaces are equal iff their bases are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_vectors(
            ambient,
            (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
        )
    }

    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Echelon basis rows, ordered by pivot.
    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_proper_nonzero(&self) -> bool {
        !self.basis.is_empty() && self.basis.len() < self.ambient
    }

    /// `v` minus its components along the pivots; zero iff `v` lies in the
    /// subspace.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for (x, y) in w.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &c.mul_ref(y);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        let mut w = self.reduce(&v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero");
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = x.mul_ref(&inv);
            }
        }
        for b in self.basis.iter_mut() {
            if b[p].is_zero() {
                continue;
            }
            let c = b[p].clone();
            for (x, y) in b.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &c.mul_ref(y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, w);
        true
    }

    pub fn join(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v.clone());
        }
        s
    }

    /// Smallest subspace containing `self` and stable under every generator.
    pub fn spin(&self, gens: &[Matrix<F>]) -> Self {
        let mut s = Self::zero(self.ambient);
        let mut queue: Vec<Vec<F>> = self.basis.clone();
        while let Some(v) = queue.pop() {
            if s.dim() == self.ambient {
                break;
            }
            if s.insert(v.clone()) {
                for g in gens {
                    queue.push(g.mul_vec(&v));
                }
            }
        }
        s
    }

    pub fn spin_vector(v: &[F], gens: &[Matrix<F>]) -> Self {
        Self::from_vectors(v.len(), vec![v.to_vec()]).spin(gens)
    }

    pub fn is_invariant(&self, gens: &[Matrix<F>]) -> bool {
        gens.iter()
            .all(|g| self.basis.iter().all(|b| self.contains(&g.mul_vec(b))))
    }

    /// Matrix of `m` on the subspace in its echelon basis. `m` must leave the
    /// subspace invariant.
    pub fn restrict(&self, m: &Matrix<F>) -> Matrix<F> {
        let cols: Vec<Vec<F>> = self
            .basis
            .iter()
            .map(|b| {
                self.coordinates(&m.mul_vec(b))
                    .expect("subspace is invariant")
            })
            .collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Positions of the standard basis vectors spanning a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|i| self.pivots.binary_search(i).is_err())
            .collect()
    }

    /// Matrix of `m` on the quotient `F^n / self`, in the basis given by the
    /// images of [`Self::complement_indices`].
    pub fn quotient(&self, m: &Matrix<F>) -> Matrix<F> {
        let comp = self.complement_indices();
        let cols: Vec<Vec<F>> = comp
            .iter()
            .map(|&j| {
                let w = self.reduce(&m.column(j));
                comp.iter().map(|&i| w[i].clone()).collect()
            })
            .collect();
        Matrix::from_columns(comp.len(), &cols)
    }

    /// Lifts quotient coordinates back to a representative in `F^n`.
    pub fn lift_from_quotient(&self, coords: &[F]) -> Vec<F> {
        let mut v = vec![F::zero(); self.ambient];
        for (c, i) in coords.iter().zip(self.complement_indices()) {
            v[i] = c.clone();
        }
        v
    }

    /// Preimage in `F^n` of a subspace of the quotient.
    pub fn preimage(&self, sub: &Subspace<F>) -> Self {
        let mut s = self.clone();
        for v in &sub.basis {
            s.insert(self.lift_from_quotient(v));
        }
        s
    }

    /// Image of a subspace of `self` (given in echelon coordinates) in `F^n`.
    pub fn embed(&self, sub: &Subspace<F>) -> Self {
        let vectors = sub
            .basis
            .iter()
            .map(|c| {
                let mut v = vec![F::zero(); self.ambient];
                for (ci, b) in c.iter().zip(&self.basis) {
                    if ci.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += &ci.mul_ref(y);
                    }
                }
                v
            })
            .collect();
        Self::from_vectors(self.ambient, vectors)
    }

    /// `{ v : <w, v> = 0 for all w in self }` for the standard bilinear form.
    pub fn annihilator(&self) -> Self {
        if self.basis.is_empty() {
            return Self::full(self.ambient);
        }
        let m = Matrix::from_rows(self.basis.clone()).expect("rows share a length");
        nullspace(&m)
    }

    /// Deterministic total order: dimension, then pivots, then entries.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.pivots.cmp(&other.pivots))
            .then_with(|| {
                for (a, b) in self.basis.iter().flatten().zip(other.basis.iter().flatten()) {
                    match a.canonical_cmp(b) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }
}

pub(crate) fn unit_vector<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn canonical_basis() {
        let a = Subspace::from_vectors(3, vec![v(&[2, 4, 0]), v(&[1, 2, 1])]);
        let b = Subspace::from_vectors(3, vec![v(&[0, 0, 5]), v(&[3, 6, 7])]);
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[v(&[1, 2, 0]), v(&[0, 0, 1])]);
        assert!(a.contains(&v(&[1, 2, 3])));
        assert!(!a.contains(&v(&[0, 1, 0])));
        assert_eq!(a.coordinates(&v(&[2, 4, 3])), Some(v(&[2, 3])));
    }

    #[test]
    fn restriction_and_quotient() {
        // Upper triangular: span(e0) is invariant.
        let m = Matrix::from_rows(vec![v(&[1, 2]), v(&[0, 3])]).unwrap();
        let s = Subspace::spin_vector(&v(&[1, 0]), &[m.clone()]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.restrict(&m), Matrix::from_rows(vec![v(&[1])]).unwrap());
        assert_eq!(s.quotient(&m), Matrix::from_rows(vec![v(&[3])]).unwrap());
        assert_eq!(Subspace::spin_vector(&v(&[0, 1]), &[m]).dim(), 2);
    }

    #[test]
    fn annihilator_is_orthogonal() {
        let s = Subspace::from_vectors(3, vec![v(&[1, 1, 0])]);
        let a = s.annihilator();
        assert_eq!(a.dim(), 2);
        for w in a.basis() {
            assert!((w[0].clone() + &w[1]).is_zero());
        }
    }
}
