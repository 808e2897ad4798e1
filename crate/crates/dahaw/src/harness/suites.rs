//! Evaluation of one grid point under one suite.

use std::collections::BTreeMap;

use dahaw_core::analysis::{
    burnside_irreducible, composition_series_aw, criterion_daha, criterion_vd, daha_predicates,
    irreducibility, leonard_pair_check, leonard_triple_check, match_predicted_factors,
    predicted_factors, vd_predicates, verify_aw_centrality, verify_daha_relations, Claim,
    CompositionSeries, Operator, Predicate, VerificationReport,
};
use dahaw_core::linalg::{char_poly, determinant, is_diagonalizable, is_multiplicity_free, Matrix};
use dahaw_core::realizations::{
    build_daha, build_vd, inv, push_to_aw, q_pow, twist, AwRealization, DahaFamily,
    DahaRealization, DahaSpec, Twist,
};
use dahaw_core::{Field, Poly, Rational, RationalFunction};

use super::config::SuiteId;
use super::grid::Point;
use crate::formats::{scalar_token, Module, WorkingField};

/// The report of one point, and whether a compared predicate was false there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointOutcome {
    pub report: VerificationReport,
    pub predicate_false: bool,
}

pub fn evaluate(point: &Point) -> PointOutcome {
    let req = point.request();
    let result = match req.is_symbolic() {
        Ok(true) => evaluate_in::<RationalFunction>(point),
        Ok(false) => evaluate_in::<Rational>(point),
        Err(e) => Err(e.to_string()),
    };
    result.unwrap_or_else(|e| {
        let mut report = VerificationReport::new();
        report.push("error", "the point could be evaluated", false, e);
        PointOutcome {
            report,
            predicate_false: false,
        }
    })
}

fn evaluate_in<F: WorkingField>(point: &Point) -> Result<PointOutcome, String> {
    let module: Module<F> = point.request().resolve().map_err(|e| e.to_string())?;
    let mut predicate_false = false;
    let report = match point.suite {
        SuiteId::DahaRelations => relations(&module)?,
        SuiteId::Determinants => determinants(&module)?,
        SuiteId::SpectrumT0t1 => spectrum(&module)?,
        SuiteId::Irreducibility => {
            let (r, pf) = irreducibility_suite(&module)?;
            predicate_false = pf;
            r
        }
        SuiteId::CompositionFactors => composition(&module)?,
        SuiteId::DiagonalizabilityTheorem => {
            let (r, pf) = theorem(&module)?;
            predicate_false = pf;
            r
        }
        SuiteId::PredicateLemmas => {
            let (r, pf) = predicate_lemmas(&module)?;
            predicate_false = pf;
            r
        }
        SuiteId::ExampleBE => example(&module, Twist::new(2))?,
        SuiteId::ExampleBO => example(&module, Twist::new(0))?,
    };
    Ok(PointOutcome {
        report,
        predicate_false,
    })
}

fn daha_spec<F: Field>(m: &Module<F>) -> Result<&DahaSpec<F>, String> {
    match m {
        Module::Daha { spec, .. } => Ok(spec),
        Module::Vd(_) => Err("suite needs an E or O module".into()),
    }
}

fn twisted<F: WorkingField>(m: &Module<F>) -> Result<DahaRealization<F>, String> {
    m.daha()
        .map_err(|e| e.to_string())?
        .ok_or_else(|| "suite needs an E or O module".to_string())
}

fn relations<F: WorkingField>(m: &Module<F>) -> Result<VerificationReport, String> {
    match m {
        Module::Vd(spec) => Ok(verify_aw_centrality(&build_vd(spec).map_err(|e| e.to_string())?)),
        Module::Daha { .. } => {
            let d = twisted(m)?;
            let mut report = verify_daha_relations(&d);
            for mut c in verify_aw_centrality(&push_to_aw(&d)).checks {
                c.id = format!("aw_{}", c.id);
                report.checks.push(c);
            }
            Ok(report)
        }
    }
}

fn determinants<F: WorkingField>(m: &Module<F>) -> Result<VerificationReport, String> {
    let spec = daha_spec(m)?;
    let d = twisted(m)?;
    let expected: [F; 4] = match spec.family {
        DahaFamily::E => [q_pow(&spec.q, -(spec.d as i64) - 1), F::one(), F::one(), F::one()],
        DahaFamily::O => spec.k.clone(),
    };
    let eps = m.twist().value() as usize;
    let mut report = VerificationReport::new();
    for i in 0..4 {
        let got = determinant(d.t(i));
        let want = &expected[(i + eps) % 4];
        report.push(
            format!("det_t{i}"),
            format!("det t{i} equals the closed form for the family"),
            got == *want,
            format!("got {}, expected {}", scalar_token(&got), scalar_token(want)),
        );
    }
    Ok(report)
}

/// Closed-form eigenvalues of `t0 t1` on the untwisted module, with
/// multiplicity.
pub fn t0t1_spectrum<F: Field>(spec: &DahaSpec<F>) -> Vec<F> {
    let q = &spec.q;
    let d = spec.d as i64;
    let k01 = spec.k[0].mul_ref(&spec.k[1]);
    let k01i = inv(&k01);
    let (even_top, odd_top) = match spec.family {
        DahaFamily::E => (d - 1, d),
        DahaFamily::O => (d, d - 1),
    };
    let mut out = Vec::new();
    for i in (0..=even_top).step_by(2) {
        out.push(k01.mul_ref(&q_pow(q, i)));
    }
    for i in (1..=odd_top).step_by(2) {
        out.push(k01i.mul_ref(&q_pow(q, -i - 1)));
    }
    out
}

fn spectrum<F: WorkingField>(m: &Module<F>) -> Result<VerificationReport, String> {
    let spec = daha_spec(m)?;
    let base = build_daha(spec).map_err(|e| e.to_string())?;
    let got = char_poly(&(base.t(0) * base.t(1)));
    let roots = t0t1_spectrum(spec);
    let want = Poly::from_roots(roots.iter());
    let mut report = VerificationReport::new();
    report.push(
        "spectrum_t0t1",
        "the characteristic polynomial of t0t1 is the product over the closed-form eigenvalues",
        got == want,
        format!(
            "eigenvalues {}",
            roots.iter().map(scalar_token).collect::<Vec<_>>().join(", ")
        ),
    );
    Ok(report)
}

fn irreducibility_suite<F: WorkingField>(
    m: &Module<F>,
) -> Result<(VerificationReport, bool), String> {
    let (gens, criterion): (Vec<Matrix<F>>, bool) = match m {
        Module::Vd(spec) => (
            build_vd(spec).map_err(|e| e.to_string())?.generators().to_vec(),
            criterion_vd(spec),
        ),
        Module::Daha { spec, .. } => (
            build_daha(spec).map_err(|e| e.to_string())?.generators().to_vec(),
            criterion_daha(spec),
        ),
    };
    let verdict = irreducibility(&gens, Some(criterion));
    let mut report = VerificationReport::new();
    report.push(
        "criterion_iff_burnside",
        "the closed-form criterion holds iff the generated algebra has dimension n^2",
        verdict.consistent(),
        format!("criterion {criterion}, burnside {}", verdict.by_burnside),
    );
    if !verdict.by_burnside {
        let (pass, detail) = match &verdict.witness {
            Some(w) => (
                w.is_proper_nonzero() && w.is_invariant(&gens),
                format!("invariant subspace of dimension {}", w.dim()),
            ),
            None => (false, "no invariant subspace found over the working field".into()),
        };
        report.push(
            "reducible_witness",
            "a reducible module exhibits a proper invariant subspace",
            pass,
            detail,
        );
    }
    Ok((report, !criterion))
}

fn composition<F: WorkingField>(m: &Module<F>) -> Result<VerificationReport, String> {
    let spec = daha_spec(m)?;
    let aw = push_to_aw(&twisted(m)?);
    let series = composition_series_aw(&aw).map_err(|e| e.to_string())?;
    let predicted = predicted_factors(spec, m.twist())
        .ok_or_else(|| format!("no factor prediction for twist {}", m.twist().value()))?;
    match_predicted_factors(&series, &predicted).map_err(|e| e.to_string())
}

const ABC: [(Operator, &str); 3] = [(Operator::A, "A"), (Operator::B, "B"), (Operator::C, "C")];

fn factor_op<F: Field>(f: &dahaw_core::analysis::CompositionFactor<F>, i: usize) -> &Matrix<F> {
    match i {
        0 => &f.a,
        1 => &f.b,
        _ => &f.c,
    }
}

fn theorem<F: WorkingField>(m: &Module<F>) -> Result<(VerificationReport, bool), String> {
    let spec = daha_spec(m)?;
    let aw = push_to_aw(&twisted(m)?);
    let series = composition_series_aw(&aw).map_err(|e| e.to_string())?;
    let ops = [&aw.a, &aw.b, &aw.c];
    let on_v: Vec<bool> = ops.iter().map(|x| is_diagonalizable(x)).collect();
    let on_factors: Vec<bool> = (0..3)
        .map(|i| series.factors.iter().all(|f| is_diagonalizable(factor_op(f, i))))
        .collect();
    let mf_factors: Vec<bool> = (0..3)
        .map(|i| series.factors.iter().all(|f| is_multiplicity_free(factor_op(f, i))))
        .collect();

    let mut report = VerificationReport::new();
    for (i, (_, name)) in ABC.iter().enumerate() {
        report.push(
            format!("theorem_{name}"),
            format!(
                "{name} diagonalizable on V <=> diagonalizable on every factor <=> multiplicity-free on every factor"
            ),
            on_v[i] == on_factors[i] && on_factors[i] == mf_factors[i],
            format!("{} {} {}", on_v[i], on_factors[i], mf_factors[i]),
        );
    }
    for (x, y) in [(0usize, 1usize), (1, 2), (2, 0)] {
        let (nx, ny) = (ABC[x].1, ABC[y].1);
        let leonard = series.factors.iter().all(|f| {
            leonard_pair_check(factor_op(f, x), factor_op(f, y)).holds
        });
        let sides = [
            on_v[x] && on_v[y],
            on_factors[x] && on_factors[y],
            mf_factors[x] && mf_factors[y],
            leonard,
        ];
        report.push(
            format!("theorem_pair_{nx}{ny}"),
            format!(
                "{nx}, {ny} diagonalizable on V <=> on every factor <=> multiplicity-free on every factor <=> Leonard pair on every factor"
            ),
            sides.iter().all(|&s| s == sides[0]),
            format!("{sides:?}"),
        );
    }
    let leonard = series
        .factors
        .iter()
        .all(|f| leonard_triple_check(&f.a, &f.b, &f.c).holds);
    let sides = [
        on_v.iter().all(|&x| x),
        on_factors.iter().all(|&x| x),
        mf_factors.iter().all(|&x| x),
        leonard,
    ];
    report.push(
        "theorem_triple",
        "A, B, C diagonalizable on V <=> on every factor <=> multiplicity-free on every factor <=> Leonard triple on every factor",
        sides.iter().all(|&s| s == sides[0]),
        format!("{sides:?}"),
    );

    // The closed-form side: the factor predicates for this twist.
    for p in daha_predicates(spec)
        .into_iter()
        .filter(|p| p.claim == Claim::FactorsMultiplicityFreeIff && p.twist == m.twist())
    {
        let i = ABC
            .iter()
            .position(|(op, _)| p.operators.contains(op))
            .ok_or("factor predicate without A, B or C")?;
        report.push(
            format!("theorem_closed_form_{}", ABC[i].1),
            p.statement.clone(),
            p.value == on_v[i],
            format!("predicate {}, diagonalizable on V {}", p.value, on_v[i]),
        );
    }
    let predicate_false = on_v.iter().any(|&x| !x);
    Ok((report, predicate_false))
}

fn predicate_lemmas<F: WorkingField>(
    m: &Module<F>,
) -> Result<(VerificationReport, bool), String> {
    let mut report = VerificationReport::new();
    let (preds, vd_aw): (Vec<Predicate>, Option<AwRealization<F>>) = match m {
        Module::Vd(spec) => (
            vd_predicates(spec),
            Some(build_vd(spec).map_err(|e| e.to_string())?),
        ),
        Module::Daha { spec, .. } => (daha_predicates(spec), None),
    };
    let mut modules: BTreeMap<u8, DahaRealization<F>> = BTreeMap::new();
    let mut series: BTreeMap<u8, CompositionSeries<F>> = BTreeMap::new();
    for p in &preds {
        let eps = p.twist.value();
        let matrices: Vec<Matrix<F>> = match (&vd_aw, m) {
            (Some(aw), _) => p
                .operators
                .iter()
                .map(|op| op.on_aw(aw).ok_or("operator not available on V_d"))
                .collect::<Result<_, _>>()?,
            (None, Module::Daha { spec, .. }) => {
                if !modules.contains_key(&eps) {
                    let base = build_daha(spec).map_err(|e| e.to_string())?;
                    modules.insert(eps, twist(&base, p.twist));
                }
                let d = &modules[&eps];
                p.operators.iter().map(|op| op.on_daha(d)).collect()
            }
            _ => unreachable!(),
        };
        let (pass, detail) = match p.claim {
            Claim::DiagonalizableIff => {
                let diag: Vec<bool> = matrices.iter().map(is_diagonalizable).collect();
                let mf: Vec<bool> = matrices.iter().map(is_multiplicity_free).collect();
                (
                    diag.iter().chain(&mf).all(|&x| x == p.value),
                    format!("predicate {}, diagonalizable {diag:?}, multiplicity-free {mf:?}", p.value),
                )
            }
            Claim::DiagonalizableIfTrue => {
                let diag: Vec<bool> = matrices.iter().map(is_diagonalizable).collect();
                (
                    !p.value || diag.iter().all(|&x| x),
                    format!("predicate {}, diagonalizable {diag:?}", p.value),
                )
            }
            Claim::FactorsMultiplicityFreeIff => {
                if !series.contains_key(&eps) {
                    let d = &modules[&eps];
                    let s = composition_series_aw(&push_to_aw(d)).map_err(|e| e.to_string())?;
                    series.insert(eps, s);
                }
                let s = &series[&eps];
                let i = ABC
                    .iter()
                    .position(|(op, _)| p.operators.contains(op))
                    .ok_or("factor predicate without A, B or C")?;
                let mf = s.factors.iter().all(|f| is_multiplicity_free(factor_op(f, i)));
                (
                    mf == p.value,
                    format!("predicate {}, multiplicity-free on every factor {mf}", p.value),
                )
            }
        };
        report.push(p.id.clone(), p.statement.clone(), pass, detail);
    }
    let predicate_false = preds.iter().any(|p| !p.value);
    Ok((report, predicate_false))
}

fn example<F: WorkingField>(m: &Module<F>, eps: Twist) -> Result<VerificationReport, String> {
    let spec = daha_spec(m)?;
    let base = build_daha(spec).map_err(|e| e.to_string())?;
    let d = twist(&base, eps);
    let mut report = VerificationReport::new();
    report.push(
        "irreducible",
        "the module is absolutely irreducible",
        burnside_irreducible(base.generators()),
        String::new(),
    );
    for (i, j) in [(0u8, 1u8), (3, 0)] {
        let op = Operator::Product(i, j);
        let diag = is_diagonalizable(&op.on_daha(&d));
        report.push(
            format!("{op}_not_diagonalizable"),
            format!("t{i}t{j} is not diagonalizable on the twist by {}", eps.value()),
            !diag,
            format!("diagonalizable {diag}"),
        );
    }
    for op in [Operator::A, Operator::B] {
        let diag = is_diagonalizable(&op.on_daha(&d));
        report.push(
            format!("{op}_diagonalizable"),
            format!("{op} is diagonalizable on the twist by {}", eps.value()),
            diag,
            format!("diagonalizable {diag}"),
        );
    }
    Ok(report)
}
