use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{inv, q_pow, DahaFamily, DahaRealization, DahaSpec, RealizationError};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// Fills a matrix one column at a time from basis-action rules.
///
/// Terms landing outside `v_0..v_d` are dropped. When two rules define the
/// same column they must agree exactly, otherwise the build fails.
struct Columns<F> {
    n: usize,
    cols: Vec<Option<Vec<F>>>,
    name: &'static str,
}

impl<F: Field> Columns<F> {
    fn new(n: usize, name: &'static str) -> Self {
        Columns { n, cols: vec![None; n], name }
    }

    fn set(&mut self, j: i64, terms: &[(i64, F)]) -> Result<(), RealizationError> {
        if j < 0 || j as usize >= self.n {
            return Ok(());
        }
        let mut col = vec![F::zero(); self.n];
        for (i, x) in terms {
            if *i >= 0 && (*i as usize) < self.n {
                col[*i as usize] += x;
            }
        }
        let slot = &mut self.cols[j as usize];
        match slot {
            Some(prev) if *prev != col => Err(RealizationError::InvalidSpec(format!(
                "rules for {} disagree on v_{j}",
                self.name
            ))),
            Some(_) => Ok(()),
            None => {
                *slot = Some(col);
                Ok(())
            }
        }
    }

    fn finish(self) -> Result<Matrix<F>, RealizationError> {
        let mut out = Vec::with_capacity(self.n);
        for (j, c) in self.cols.into_iter().enumerate() {
            out.push(c.ok_or_else(|| {
                RealizationError::InvalidSpec(format!("no rule for {} on v_{j}", self.name))
            })?);
        }
        Ok(Matrix::from_columns(self.n, &out))
    }
}

/// `start, start+2, ..., ≤ end`; empty when `start > end`.
fn stepped(start: i64, end: i64) -> impl Iterator<Item = i64> {
    (start..=end).step_by(2)
}

pub fn build_daha<F: Field>(spec: &DahaSpec<F>) -> Result<DahaRealization<F>, RealizationError> {
    match spec.family {
        DahaFamily::E => build_e(spec),
        DahaFamily::O => build_o(spec),
    }
}

pub fn build_e<F: Field>(spec: &DahaSpec<F>) -> Result<DahaRealization<F>, RealizationError> {
    if spec.family != DahaFamily::E {
        return Err(RealizationError::InvalidSpec("expected an E spec".into()));
    }
    spec.validate()?;
    let d = spec.d as i64;
    let n = spec.d + 1;
    let q = &spec.q;
    let [k0, k1, k2, k3] = &spec.k;
    let (k0i, k1i, k2i, k3i) = (inv(k0), inv(k1), inv(k2), inv(k3));
    let one = F::one();
    let k0sq = k0.mul_ref(k0);
    let kk = k0.mul_ref(k1).mul_ref(k3);
    let kki = inv(&kk);
    let qp = |e: i64| q_pow(q, e);
    // (1 - q^i)(1 - k0^2 q^i)
    let lower0 = |i: i64| (one.clone() - qp(i)).mul_ref(&(one.clone() - k0sq.mul_ref(&qp(i))));
    // (K q^i - k2)(K q^i - k2^-1), K = k0 k1 k3
    let lower2 = |i: i64| {
        let x = kk.mul_ref(&qp(i));
        (x.clone() - k2).mul_ref(&(x - &k2i))
    };

    let mut t0 = Columns::new(n, "t0");
    t0.set(0, &[(0, k0.clone())])?;
    t0.set(d, &[(d, k0.clone())])?;
    for i in stepped(2, d - 1) {
        t0.set(
            i,
            &[
                (i - 1, k0i.mul_ref(&qp(-i)).mul_ref(&lower0(i))),
                (i, k0.clone() + &k0i - k0i.mul_ref(&qp(-i))),
            ],
        )?;
    }
    for i in stepped(1, d - 2) {
        let c = k0i.mul_ref(&qp(-i - 1));
        t0.set(i, &[(i, c.clone()), (i + 1, -c)])?;
    }

    let mut t1 = Columns::new(n, "t1");
    t1.set(0, &[(0, k1.clone()), (1, k1i.clone())])?;
    for i in stepped(2, d - 1) {
        t1.set(
            i,
            &[
                (i - 1, -k1.mul_ref(&lower0(i))),
                (i, k1.clone()),
                (i + 1, k1i.clone()),
            ],
        )?;
    }
    for i in stepped(1, d) {
        t1.set(i, &[(i, k1i.clone())])?;
    }

    let mut t2 = Columns::new(n, "t2");
    for i in stepped(0, d - 1) {
        let c = kki.mul_ref(&qp(-i - 1));
        t2.set(i, &[(i, c.clone()), (i + 1, -c)])?;
    }
    for i in stepped(1, d) {
        let denom = inv(&kk.mul_ref(&qp(i)));
        t2.set(
            i,
            &[
                (i - 1, lower2(i).mul_ref(&denom)),
                (i, k2.clone() + &k2i - kki.mul_ref(&qp(-i))),
            ],
        )?;
    }

    let mut t3 = Columns::new(n, "t3");
    for i in stepped(0, d - 1) {
        t3.set(i, &[(i, k3.clone())])?;
    }
    for i in stepped(1, d - 2) {
        t3.set(
            i,
            &[
                (i - 1, -k3i.mul_ref(&lower2(i))),
                (i, k3i.clone()),
                (i + 1, k3.clone()),
            ],
        )?;
    }
    t3.set(d, &[(d - 1, -k3i.mul_ref(&lower2(d))), (d, k3i.clone())])?;

    DahaRealization::from_spec(
        spec.clone(),
        [t0.finish()?, t1.finish()?, t2.finish()?, t3.finish()?],
    )
}

pub fn build_o<F: Field>(spec: &DahaSpec<F>) -> Result<DahaRealization<F>, RealizationError> {
    if spec.family != DahaFamily::O {
        return Err(RealizationError::InvalidSpec("expected an O spec".into()));
    }
    spec.validate()?;
    let d = spec.d as i64;
    let n = spec.d + 1;
    let q = &spec.q;
    let [k0, k1, k2, k3] = &spec.k;
    let (k0i, k1i, k2i, k3i) = (inv(k0), inv(k1), inv(k2), inv(k3));
    let one = F::one();
    let k0sq = k0.mul_ref(k0);
    let k2isq = k2i.mul_ref(&k2i);
    let qp = |e: i64| q_pow(q, e);
    let lower0 = |i: i64| (one.clone() - qp(i)).mul_ref(&(one.clone() - k0sq.mul_ref(&qp(i))));

    let mut t0 = Columns::new(n, "t0");
    t0.set(0, &[(0, k0.clone())])?;
    for i in stepped(2, d) {
        t0.set(
            i,
            &[
                (i - 1, k0i.mul_ref(&qp(-i)).mul_ref(&lower0(i))),
                (i, k0.clone() + &k0i - k0i.mul_ref(&qp(-i))),
            ],
        )?;
    }
    for i in stepped(1, d - 1) {
        let c = k0i.mul_ref(&qp(-i - 1));
        t0.set(i, &[(i, c.clone()), (i + 1, -c)])?;
    }

    let mut t1 = Columns::new(n, "t1");
    t1.set(0, &[(0, k1.clone()), (1, k1i.clone())])?;
    t1.set(d, &[(d - 1, -k1.mul_ref(&lower0(d))), (d, k1.clone())])?;
    for i in stepped(2, d - 2) {
        t1.set(
            i,
            &[
                (i - 1, -k1.mul_ref(&lower0(i))),
                (i, k1.clone()),
                (i + 1, k1i.clone()),
            ],
        )?;
    }
    for i in stepped(1, d - 1) {
        t1.set(i, &[(i, k1i.clone())])?;
    }

    let mut t2 = Columns::new(n, "t2");
    for i in stepped(0, d - 2) {
        let c = k2.mul_ref(&qp(d - i));
        t2.set(i, &[(i, c.clone()), (i + 1, -c)])?;
    }
    for i in stepped(1, d - 1) {
        let lo = -k2
            .mul_ref(&(one.clone() - k2isq.mul_ref(&qp(i - d - 1))))
            .mul_ref(&(one.clone() - qp(d - i + 1)));
        t2.set(
            i,
            &[
                (i - 1, lo),
                (i, k2.clone() + &k2i - k2.mul_ref(&qp(d - i + 1))),
            ],
        )?;
    }
    t2.set(d, &[(d, k2.clone())])?;

    let mut t3 = Columns::new(n, "t3");
    for i in stepped(0, d) {
        t3.set(i, &[(i, k3.clone())])?;
    }
    for i in stepped(1, d - 1) {
        let lo = -k3i
            .mul_ref(&(one.clone() - k2isq.mul_ref(&qp(i - d - 1))))
            .mul_ref(&(one.clone() - qp(i - d - 1)));
        t3.set(i, &[(i - 1, lo), (i, k3i.clone()), (i + 1, k3.clone())])?;
    }

    DahaRealization::from_spec(
        spec.clone(),
        [t0.finish()?, t1.finish()?, t2.finish()?, t3.finish()?],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;
    use crate::scalar::Rational;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn frac(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn e_d1_t0_is_scalar() {
        let m = build_e(&DahaSpec::e(1, r(4), [frac(1, 4), r(2), r(3), r(5)]).unwrap()).unwrap();
        assert_eq!(m.t(0), &Matrix::scalar(2, frac(1, 4)));
        assert_eq!(determinant(m.t(0)), frac(1, 16));
    }

    #[test]
    fn e_t1_odd_columns() {
        for d in [1usize, 3, 5] {
            let q = r(3);
            let k0 = q.pow(-((d as i64 + 1) / 2)).unwrap();
            let k1 = frac(2, 7);
            let m = build_e(&DahaSpec::e(d, q, [k0, k1.clone(), r(3), r(5)]).unwrap()).unwrap();
            let k1i = k1.inv().unwrap();
            for i in (1..=d).step_by(2) {
                let mut expect = vec![r(0); d + 1];
                expect[i] = k1i.clone();
                assert_eq!(m.t(1).column(i), expect);
            }
        }
    }

    #[test]
    fn e_d3_t0_by_hand() {
        // q = 2, k0 = 1/4. Column 1: k0^-1 q^-2 (v1 - v2) = v1 - v2.
        // Column 2: k0^-1 q^-2 (1 - 4)(1 - 1/16 * 4) v1 + (1/4 + 4 - 1) v2.
        let m = build_e(&DahaSpec::e(3, r(2), [frac(1, 4), r(1), r(1), r(1)]).unwrap()).unwrap();
        let expect = Matrix::from_rows(vec![
            vec![frac(1, 4), r(0), r(0), r(0)],
            vec![r(0), r(1), frac(-9, 4), r(0)],
            vec![r(0), r(-1), frac(13, 4), r(0)],
            vec![r(0), r(0), r(0), frac(1, 4)],
        ])
        .unwrap();
        assert_eq!(m.t(0), &expect);
        assert_eq!(determinant(m.t(0)), frac(1, 16));
    }

    #[test]
    fn o_small_cases() {
        let k3 = frac(1, 60);
        let m = build_o(&DahaSpec::o(0, r(2), [r(2), r(3), r(5), k3.clone()]).unwrap()).unwrap();
        assert_eq!(m.t(3), &Matrix::scalar(1, k3));
        assert_eq!(m.t(1), &Matrix::scalar(1, r(3)));

        let k3 = frac(1, 240);
        let m = build_o(&DahaSpec::o(2, r(2), [r(2), r(3), r(5), k3.clone()]).unwrap()).unwrap();
        assert_eq!(determinant(m.t(2)), r(5));
        assert_eq!(m.t(3).column(0), vec![k3.clone(), r(0), r(0)]);
        assert_eq!(m.t(3).column(2), vec![r(0), r(0), k3]);
    }

    #[test]
    fn family_mismatch_is_rejected() {
        let spec = DahaSpec::o(0, r(2), [r(2), r(3), r(5), frac(1, 60)]).unwrap();
        assert!(build_e(&spec).is_err());
    }
}
