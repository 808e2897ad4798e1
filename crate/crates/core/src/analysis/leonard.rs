use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{char_poly, eigenspace, inverse, is_multiplicity_free, Matrix};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeonardVerdict<F> {
    /// Per input operator, in input order.
    pub multiplicity_free: Vec<bool>,
    pub holds: bool,
    /// One entry per operator taken as the diagonal one: its eigenvalues in
    /// an order making the partners irreducible tridiagonal. Filled only when
    /// the verdict holds.
    pub certificates: Vec<Vec<F>>,
    pub reason: Option<String>,
}

struct Eigenbasis<F> {
    values: Vec<F>,
    p: Matrix<F>,
    p_inv: Matrix<F>,
}

fn eigenbasis<F: Field>(l: &Matrix<F>) -> Result<Eigenbasis<F>, String> {
    let n = l.rows();
    let roots = F::find_roots(&char_poly(l));
    if !roots.splits || roots.roots.len() != n {
        return Err(String::from("characteristic polynomial does not split into distinct roots"));
    }
    let values: Vec<F> = roots.distinct().cloned().collect();
    let columns: Vec<Vec<F>> = values
        .iter()
        .map(|v| eigenspace(l, v).basis()[0].clone())
        .collect();
    let p = Matrix::from_columns(n, &columns);
    let p_inv = inverse(&p).map_err(|_| String::from("eigenvectors are dependent"))?;
    Ok(Eigenbasis { values, p, p_inv })
}

/// The vertex order of the support graph of `m` when it is a single path in
/// which every edge carries two nonzero entries.
fn path_order<F: Field>(m: &Matrix<F>) -> Option<Vec<usize>> {
    let n = m.rows();
    if n == 1 {
        return Some(vec![0]);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges = 0;
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (!m[(i, j)].is_zero(), !m[(j, i)].is_zero());
            if x || y {
                if !(x && y) {
                    return None;
                }
                adj[i].push(j);
                adj[j].push(i);
                edges += 1;
            }
        }
    }
    if edges != n - 1 || adj.iter().any(|a| a.is_empty() || a.len() > 2) {
        return None;
    }
    let start = (0..n).find(|&i| adj[i].len() == 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
        prev = cur;
        cur = next;
        order.push(cur);
        if order.len() > n {
            return None;
        }
    }
    (order.len() == n).then_some(order)
}

/// Whether `m` is irreducible tridiagonal after reordering the basis by
/// `order`.
fn tridiagonal_in<F: Field>(m: &Matrix<F>, order: &[usize]) -> bool {
    let n = order.len();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let nonzero = !m[(order[a], order[b])].is_zero();
            if nonzero != (a.abs_diff(b) == 1) {
                return false;
            }
        }
    }
    true
}

/// `ops[which]` diagonal, the others simultaneously irreducible tridiagonal.
fn condition<F: Field>(ops: &[&Matrix<F>], which: usize) -> Result<Vec<F>, String> {
    let eb = eigenbasis(ops[which])?;
    let partners: Vec<Matrix<F>> = ops
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != which)
        .map(|(_, m)| &(&eb.p_inv * *m) * &eb.p)
        .collect();
    let order = path_order(&partners[0]).ok_or_else(|| {
        format!("operator {} is not irreducible tridiagonal in any ordering of the eigenbasis of operator {which}", if which == 0 { 1 } else { 0 })
    })?;
    for (k, m) in partners.iter().enumerate().skip(1) {
        if !tridiagonal_in(m, &order) {
            return Err(format!(
                "partner {k} of operator {which} is not irreducible tridiagonal in the same ordering"
            ));
        }
    }
    Ok(order.into_iter().map(|i| eb.values[i].clone()).collect())
}

/// Every operator is diagonalizable in a basis where all the others are
/// irreducible tridiagonal. Two operators give a Leonard pair, three a
/// Leonard triple.
pub fn leonard_check<F: Field>(ops: &[&Matrix<F>]) -> LeonardVerdict<F> {
    let multiplicity_free: Vec<bool> = ops.iter().map(|m| is_multiplicity_free(m)).collect();
    let mut verdict = LeonardVerdict {
        multiplicity_free,
        holds: false,
        certificates: Vec::new(),
        reason: None,
    };
    if let Some(i) = verdict.multiplicity_free.iter().position(|&b| !b) {
        verdict.reason = Some(format!("operator {i} is not multiplicity-free"));
        return verdict;
    }
    let mut certificates = Vec::new();
    for which in 0..ops.len() {
        match condition(ops, which) {
            Ok(c) => certificates.push(c),
            Err(e) => {
                verdict.reason = Some(e);
                return verdict;
            }
        }
    }
    verdict.holds = true;
    verdict.certificates = certificates;
    verdict
}

pub fn leonard_pair_check<F: Field>(l: &Matrix<F>, l_star: &Matrix<F>) -> LeonardVerdict<F> {
    leonard_check(&[l, l_star])
}

pub fn leonard_triple_check<F: Field>(
    a: &Matrix<F>,
    b: &Matrix<F>,
    c: &Matrix<F>,
) -> LeonardVerdict<F> {
    leonard_check(&[a, b, c])
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
    fn one_by_one() {
        assert!(leonard_pair_check(&m(&[&[2]]), &m(&[&[3]])).holds);
        assert!(leonard_triple_check(&m(&[&[2]]), &m(&[&[3]]), &m(&[&[4]])).holds);
    }

    #[test]
    fn two_by_two_swap() {
        let v = leonard_pair_check(&m(&[&[1, 0], &[0, 2]]), &m(&[&[0, 1], &[1, 0]]));
        assert!(v.holds, "{:?}", v.reason);
        assert_eq!(v.certificates[0], [r(1), r(2)]);
    }

    #[test]
    fn path_order_rejects_a_triangle_and_one_sided_edges() {
        assert!(path_order(&m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])).is_none());
        assert!(path_order(&m(&[&[0, 1, 0], &[0, 0, 1], &[0, 1, 0]])).is_none());
        assert_eq!(path_order(&m(&[&[0, 0, 1], &[0, 0, 1], &[1, 1, 0]])), Some(vec![0, 2, 1]));
    }

    #[test]
    fn partners_must_share_an_ordering() {
        let d = m(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let x = m(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
        let y = m(&[&[0, 0, 1], &[0, 0, 1], &[1, 1, 0]]);
        let v = leonard_triple_check(&d, &x, &y);
        assert!(!v.holds);
        assert!(v.reason.is_some());
    }

    #[test]
    fn vd_at_generic_parameters_is_a_leonard_triple() {
        let spec = VdSpec::new(2, r(2), r(3), r(3), r(3)).unwrap();
        let aw = build_vd(&spec).unwrap();
        assert!(leonard_pair_check(&aw.a, &aw.b).holds);
        let v = leonard_triple_check(&aw.a, &aw.b, &aw.c);
        assert!(v.holds, "{:?}", v.reason);
        assert_eq!(v.certificates.len(), 3);
    }
}
