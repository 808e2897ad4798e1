use dahaw_core::analysis::{leonard_pair_check, leonard_triple_check};
use dahaw_core::linalg::{
    char_poly, determinant, eigenspace, eval_poly_at_matrix, inverse, is_diagonalizable,
    is_multiplicity_free, min_poly, Matrix,
};
use dahaw_core::realizations::{build_daha, build_vd, twist, DahaSpec, Twist, VdSpec};
use dahaw_core::scalar::specialize;
use dahaw_core::{Field, Poly, Rational, RationalFunction};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn small_poly(max_len: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(rational(), 1..=max_len).prop_map(Poly::from_coeffs)
}

fn function() -> impl Strategy<Value = RationalFunction> {
    (small_poly(4), small_poly(3))
        .prop_filter_map("denominator is nonzero", |(n, d)| {
            RationalFunction::from_parts(n, d).ok()
        })
}

fn matrix(max_n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-4i64..=4, n * n)
            .prop_map(move |xs| Matrix::from_fn(n, n, |i, j| Rational::from(xs[i * n + j])))
    })
}

/// Matrices with a forced repeated eigenvalue or a Jordan block alongside
/// generic ones.
fn structured_matrix() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..=5, prop::collection::vec(-2i64..=2, 5), prop::collection::vec(0i64..=1, 4))
        .prop_flat_map(|(n, diag, sup)| {
            let upper = Matrix::from_fn(n, n, |i, j| {
                if i == j {
                    Rational::from(diag[i])
                } else if j == i + 1 {
                    Rational::from(sup[i])
                } else {
                    Rational::from(0)
                }
            });
            invertible(n).prop_map(move |p| {
                let pi = inverse(&p).unwrap();
                &(&p * &upper) * &pi
            })
        })
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-3i64..=3, n * n)
        .prop_map(move |xs| Matrix::from_fn(n, n, |i, j| Rational::from(xs[i * n + j])))
        .prop_filter("invertible", |m| !determinant(m).is_zero())
}

fn kernel_config() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

proptest! {
    #![proptest_config(kernel_config())]

    #[test]
    fn rational_field_axioms(x in rational(), y in rational(), z in rational()) {
        prop_assert_eq!((x.clone() + &y) + &z, x.clone() + &(y.clone() + &z));
        prop_assert_eq!(x.mul_ref(&(y.clone() + &z)), x.mul_ref(&y) + &x.mul_ref(&z));
        if !x.is_zero() {
            prop_assert!(x.mul_ref(&x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn cayley_hamilton(m in matrix(8)) {
        prop_assert!(eval_poly_at_matrix(&char_poly(&m), &m).is_zero());
    }

    #[test]
    fn min_poly_divides_char_poly(m in matrix(8)) {
        let mp = min_poly(&m);
        prop_assert!(mp.divides(&char_poly(&m)));
        prop_assert!(eval_poly_at_matrix(&mp, &m).is_zero());
    }

    #[test]
    fn inverse_is_two_sided(m in matrix(8)) {
        match inverse(&m) {
            Ok(mi) => {
                let id = Matrix::identity(m.rows());
                prop_assert_eq!(&mi * &m, id.clone());
                prop_assert_eq!(&m * &mi, id);
            }
            Err(_) => prop_assert!(determinant(&m).is_zero()),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn function_field_axioms(x in function(), y in function(), z in function()) {
        prop_assert_eq!((x.clone() + &y) + &z, x.clone() + &(y.clone() + &z));
        prop_assert_eq!(x.mul_ref(&(y.clone() + &z)), x.mul_ref(&y) + &x.mul_ref(&z));
        if !x.is_zero() {
            prop_assert!(x.mul_ref(&x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn normalization_is_idempotent(x in function()) {
        let again = RationalFunction::from_parts(x.numer().clone(), x.denom().clone()).unwrap();
        prop_assert_eq!(&again, &x);
        prop_assert!(x.denom().is_monic());
        if !x.is_zero() {
            prop_assert_eq!(x.numer().gcd(x.denom()).degree(), Some(0));
        }
    }

    #[test]
    fn printing_round_trips(x in function()) {
        let text = x.to_string();
        let back: dahaw_core::FieldElement = text.parse().unwrap();
        prop_assert_eq!(back.to_function(), x);
    }

    #[test]
    fn specialize_is_a_homomorphism(x in function(), y in function(), q in 2i64..=7) {
        let q = Rational::from(q);
        if let (Ok(a), Ok(b)) = (specialize(&x, &q), specialize(&y, &q)) {
            prop_assert_eq!(specialize(&x.mul_ref(&y), &q).unwrap(), a.mul_ref(&b));
            prop_assert_eq!(specialize(&(x.clone() + &y), &q).unwrap(), a + &b);
        }
    }

    #[test]
    fn multiplicity_free_means_min_poly_is_char_poly(m in matrix(6)) {
        if is_multiplicity_free(&m) {
            prop_assert_eq!(min_poly(&m), char_poly(&m));
        }
    }

    #[test]
    fn eigenspaces_fill_the_space_iff_diagonalizable(m in structured_matrix()) {
        let roots = Rational::find_roots(&char_poly(&m));
        prop_assume!(roots.splits);
        let total: usize = roots.distinct().map(|l| eigenspace(&m, l).dim()).sum();
        prop_assert_eq!(total == m.rows(), is_diagonalizable(&m));
    }
}

fn vd_params() -> impl Strategy<Value = (usize, Rational, Rational, Rational)> {
    (0usize..=3, nonzero_rational(), nonzero_rational(), nonzero_rational())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leonard_verdicts_ignore_scaling_and_change_of_basis(
        (d, a, b, c) in vd_params(),
        s in nonzero_rational(),
        t in nonzero_rational(),
        p in invertible(4),
    ) {
        let aw = build_vd(&VdSpec::new(d, Rational::from(2), a, b, c).unwrap()).unwrap();
        let n = aw.dim();
        let p = Matrix::from_fn(n, n, |i, j| p[(i, j)].clone());
        prop_assume!(!determinant(&p).is_zero());
        let pi = inverse(&p).unwrap();
        let conj = |x: &Matrix<Rational>| &(&p * x) * &pi;
        let base = leonard_pair_check(&aw.a, &aw.b).holds;
        prop_assert_eq!(leonard_pair_check(&aw.a.scale(&s), &aw.b.scale(&t)).holds, base);
        prop_assert_eq!(leonard_pair_check(&conj(&aw.a), &conj(&aw.b)).holds, base);
        let triple = leonard_triple_check(&aw.a, &aw.b, &aw.c).holds;
        prop_assert_eq!(leonard_triple_check(&conj(&aw.a), &conj(&aw.b), &conj(&aw.c)).holds, triple);
    }

    #[test]
    fn twisting_is_a_group_action(e1 in 0i64..4, e2 in 0i64..4, k1 in nonzero_rational(), k2 in nonzero_rational(), k3 in nonzero_rational()) {
        let q = Rational::from(2);
        let k0 = Rational::new(1, 4).unwrap();
        let m = build_daha(&DahaSpec::e(3, q, [k0, k1, k2, k3]).unwrap()).unwrap();
        let once = twist(&m, Twist::new(e1 + e2));
        let twice = twist(&twist(&m, Twist::new(e1)), Twist::new(e2));
        prop_assert_eq!(once.generators(), twice.generators());
        prop_assert_eq!(once.central(), twice.central());
        prop_assert_eq!(once.twist_label(), twice.twist_label());
    }
}
