use alloc::vec::Vec;

use super::intertwiner::intertwining_space;
use crate::linalg::{char_poly, eigenspace, nullspace, unit_vector, Matrix, Subspace};
use crate::scalar::Field;

/// Verdicts on irreducibility of a module from a closed-form criterion and
/// from the dimension of the generated matrix algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityVerdict<F> {
    pub by_criterion: Option<bool>,
    pub by_burnside: bool,
    /// A proper nonzero common invariant subspace when one was found.
    pub witness: Option<Subspace<F>>,
}

impl<F: Field> IrreducibilityVerdict<F> {
    /// True when the criterion (if given) agrees with the algebra dimension.
    pub fn consistent(&self) -> bool {
        self.by_criterion.map_or(true, |c| c == self.by_burnside)
    }
}

fn flatten<F: Field>(m: &Matrix<F>) -> Vec<F> {
    m.entries().to_vec()
}

/// A basis of the unital algebra generated by `gens`, found by closing the
/// span of the identity under left multiplication by each generator.
pub fn algebra_basis<F: Field>(gens: &[Matrix<F>]) -> Vec<Matrix<F>> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let n = first.rows();
    let full = n * n;
    let mut span = Subspace::zero(full);
    let mut found = Vec::new();
    let mut queue = alloc::collections::VecDeque::new();
    queue.push_back(Matrix::identity(n));
    while let Some(m) = queue.pop_front() {
        if span.dim() == full {
            break;
        }
        if span.insert(flatten(&m)) {
            for g in gens {
                queue.push_back(g * &m);
            }
            found.push(m);
        }
    }
    found
}

pub fn algebra_dimension<F: Field>(gens: &[Matrix<F>]) -> usize {
    algebra_basis(gens).len()
}

/// Absolute irreducibility: the generated algebra is all of `M_n`.
pub fn burnside_irreducible<F: Field>(gens: &[Matrix<F>]) -> bool {
    let Some(first) = gens.first() else {
        return false;
    };
    let n = first.rows();
    algebra_dimension(gens) == n * n
}

pub fn irreducibility<F: Field>(
    gens: &[Matrix<F>],
    by_criterion: Option<bool>,
) -> IrreducibilityVerdict<F> {
    let by_burnside = burnside_irreducible(gens);
    let witness = if by_burnside {
        None
    } else {
        proper_invariant_subspace(gens)
    };
    IrreducibilityVerdict {
        by_criterion,
        by_burnside,
        witness,
    }
}

fn smallest<F: Field>(candidates: impl IntoIterator<Item = Subspace<F>>) -> Option<Subspace<F>> {
    candidates
        .into_iter()
        .filter(Subspace::is_proper_nonzero)
        .min_by(|a, b| a.canonical_cmp(b))
}

/// Spin-up candidates: standard basis vectors and every rational eigenvector
/// of every generator.
fn spin_candidates<F: Field>(gens: &[Matrix<F>]) -> Vec<Vec<F>> {
    let n = gens[0].rows();
    let mut out: Vec<Vec<F>> = (0..n).map(|i| unit_vector(n, i)).collect();
    for g in gens {
        let roots = F::find_roots(&char_poly(g));
        for lambda in roots.distinct() {
            out.extend(eigenspace(g, lambda).basis().iter().cloned());
        }
    }
    out
}

/// The smallest proper subspace reached by spinning up a candidate vector.
pub fn minimal_spin<F: Field>(gens: &[Matrix<F>]) -> Option<Subspace<F>> {
    if gens.is_empty() {
        return None;
    }
    smallest(
        spin_candidates(gens)
            .iter()
            .map(|v| Subspace::spin_vector(v, gens)),
    )
}

/// A proper nonzero subspace invariant under every generator, if one exists
/// over the working field and one of the strategies below finds it: spin-up
/// of candidate vectors, the annihilator of a spin-up for the transposes,
/// an eigenspace of a commuting matrix, and the image of the radical of the
/// generated algebra.
pub fn proper_invariant_subspace<F: Field>(gens: &[Matrix<F>]) -> Option<Subspace<F>> {
    let n = gens.first()?.rows();
    if n < 2 {
        return None;
    }
    if let Some(s) = minimal_spin(gens) {
        return Some(s);
    }
    let transposed: Vec<Matrix<F>> = gens.iter().map(Matrix::transpose).collect();
    if let Some(s) = minimal_spin(&transposed) {
        let w = s.annihilator();
        debug_assert!(w.is_invariant(gens));
        return Some(w);
    }
    if let Some(s) = from_commutant(gens) {
        return Some(s);
    }
    from_radical(gens)
}

fn from_commutant<F: Field>(gens: &[Matrix<F>]) -> Option<Subspace<F>> {
    let comm = intertwining_space(gens, gens);
    let mut found = Vec::new();
    for c in comm.iter().filter(|c| c.as_scalar().is_none()) {
        let roots = F::find_roots(&char_poly(c));
        for lambda in roots.distinct() {
            found.push(eigenspace(c, lambda));
        }
    }
    smallest(found)
}

fn from_radical<F: Field>(gens: &[Matrix<F>]) -> Option<Subspace<F>> {
    let n = gens[0].rows();
    let basis = algebra_basis(gens);
    let k = basis.len();
    let gram = Matrix::from_fn(k, k, |i, j| (&basis[i] * &basis[j]).trace());
    let rad = nullspace(&gram);
    let mut image = Subspace::zero(n);
    for coeffs in rad.basis() {
        let mut r = Matrix::zeros(n, n);
        for (c, b) in coeffs.iter().zip(&basis) {
            if !c.is_zero() {
                r = &r + &b.scale(c);
            }
        }
        for j in 0..n {
            image.insert(r.column(j));
        }
    }
    image.is_proper_nonzero().then_some(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizations::{build_vd, VdSpec};
    use crate::scalar::Rational;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn scalars_in_dimension_one() {
        assert!(burnside_irreducible(&[m(&[&[3]]), m(&[&[5]])]));
    }

    #[test]
    fn commuting_diagonals_have_an_eigenline() {
        let gens = [m(&[&[1, 0], &[0, 2]]), m(&[&[3, 0], &[0, 4]])];
        let v = irreducibility(&gens, None);
        assert!(!v.by_burnside);
        let w = v.witness.unwrap();
        assert_eq!(w.dim(), 1);
        assert!(w.is_invariant(&gens));
    }

    #[test]
    fn vd_at_generic_parameters_is_irreducible() {
        let spec = VdSpec::new(2, r(2), r(3), r(3), r(3)).unwrap();
        let aw = build_vd(&spec).unwrap();
        assert!(burnside_irreducible(&aw.generators()));
    }

    #[test]
    fn rotation_has_no_rational_witness() {
        // Irreducible over Q, reducible over Q(i).
        let gens = [m(&[&[0, -1], &[1, 0]])];
        let v = irreducibility(&gens, None);
        assert!(!v.by_burnside);
        assert!(v.witness.is_none());
    }

    #[test]
    fn radical_finds_the_socle_of_a_jordan_block() {
        let gens = [m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])];
        let w = from_radical(&gens).unwrap();
        assert_eq!(w.dim(), 2);
        assert!(w.is_invariant(&gens));
    }
}
