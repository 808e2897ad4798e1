use dahaw::core::analysis::composition_series_aw;
use dahaw::core::linalg::{char_poly, is_diagonalizable, is_multiplicity_free, nullspace, Matrix};
use dahaw::core::realizations::{build_daha, push_to_aw, twist, DahaSpec, Twist};
use dahaw::core::{Poly, Rational};
use dahaw::formats::Family;
use dahaw::harness::{generate, replay, run_suite, HarnessError, Sampler, SuiteId, SweepConfig};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn cfg(suites: &[SuiteId], families: &[Family], d: &[usize], count: usize) -> SweepConfig {
    SweepConfig {
        suites: suites.to_vec(),
        families: families.to_vec(),
        d_values: d.to_vec(),
        q_values: vec!["2".into()],
        sampler: Sampler::Random {
            seed: 5,
            count,
            laurent: None,
        },
        twists: vec![0],
        boundary: true,
    }
}

#[test]
fn relation_sweep_point_count() {
    let res = run_suite(&cfg(&[SuiteId::DahaRelations], &[Family::E], &[1, 3], 5)).unwrap();
    assert_eq!(res.points.len(), 10);
    assert!(res.all_pass(), "{}", res.summary_text());
}

#[test]
fn odd_theorem_sweep_includes_failing_predicates() {
    let res = run_suite(&cfg(&[SuiteId::DiagonalizabilityTheorem], &[Family::O], &[2, 4], 2)).unwrap();
    assert!(res.all_pass(), "{}", res.summary_text());
    assert!(res.points.iter().any(|p| p.outcome.predicate_false));
    assert!(res.points.iter().any(|p| p.point.origin.starts_with("boundary")));
}

#[test]
fn even_example_pattern() {
    let res = run_suite(&cfg(&[SuiteId::ExampleBE], &[Family::E], &[3, 5], 2)).unwrap();
    assert_eq!(res.points.len(), 4);
    assert!(res.all_pass(), "{}", res.summary_text());
}

#[test]
fn replay_reproduces_a_point() {
    let c = cfg(&[SuiteId::Irreducibility], &[Family::Vd, Family::O], &[2], 3);
    let res = run_suite(&c).unwrap();
    let p = &res.points[res.points.len() / 2];
    let again = replay(&c, &p.id()).unwrap();
    assert_eq!(again.outcome, p.outcome);
    assert!(matches!(replay(&c, "no/such/point"), Err(HarnessError::UnknownPoint(_))));
}

#[test]
fn grids_share_points_across_suites() {
    let both = generate(&cfg(
        &[SuiteId::DahaRelations, SuiteId::Determinants],
        &[Family::E],
        &[3],
        4,
    ))
    .unwrap();
    let params = |s: SuiteId| -> Vec<Vec<String>> {
        both.iter().filter(|p| p.suite == s).map(|p| p.params.clone()).collect()
    };
    assert_eq!(params(SuiteId::DahaRelations), params(SuiteId::Determinants));
}

#[test]
fn config_rejections() {
    let mut c = cfg(&[SuiteId::Irreducibility], &[Family::E], &[1], 1);
    c.boundary = false;
    assert!(matches!(run_suite(&c), Err(HarnessError::Config(_))));
    let mut c = cfg(&[SuiteId::DahaRelations], &[Family::E], &[1], 1);
    c.q_values = vec!["-1".into()];
    assert!(matches!(run_suite(&c), Err(HarnessError::Config(_))));
    c.q_values = vec!["2".into()];
    c.twists = vec![4];
    assert!(run_suite(&c).is_err());
    let text = r#"{"suites":["daha_relations"],"families":["E"],"d_values":[1],
        "q_values":["2"],"sampler":{"kind":"random","seed":1,"count":1},"extra":1}"#;
    assert!(SweepConfig::from_json(text).is_err());
}

/// `E`, `d = 3`, `q = 2`, `k = (1/4, 3, -1, 2)` twisted by 2: `C` is
/// multiplicity-free on both composition factors but not diagonalizable
/// on the module. The characteristic polynomial and eigenspace dimension
/// were computed separately with a computer algebra system.
#[test]
fn unit_k2_at_d3_splits_factor_and_module_behaviour() {
    let q = Rational::from(2);
    let spec = DahaSpec::e(3, q, [r(1, 4), r(3, 1), r(-1, 1), r(2, 1)]).unwrap();
    let m = twist(&build_daha(&spec).unwrap(), Twist::new(2));
    let aw = push_to_aw(&m);
    let expected = Poly::from_roots([r(-2, 1), r(-2, 1), r(-17, 4), r(-17, 4)].iter());
    assert_eq!(char_poly(&aw.c), expected);
    let shifted = |x: Rational| &aw.c + &Matrix::scalar(4, x);
    assert_eq!(nullspace(&shifted(r(2, 1))).dim(), 2);
    assert_eq!(nullspace(&shifted(r(17, 4))).dim(), 1);
    assert!(!is_diagonalizable(&aw.c));
    let series = composition_series_aw(&aw).unwrap();
    assert_eq!(series.dimensions(), vec![2, 2]);
    for f in &series.factors {
        assert!(is_multiplicity_free(&f.c));
        assert!(is_diagonalizable(&f.c));
    }
    assert!(is_diagonalizable(&aw.a) && is_diagonalizable(&aw.b));
}
