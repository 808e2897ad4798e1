use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::irreducible::{burnside_irreducible, proper_invariant_subspace};
use super::relations::aw_central_character;
use super::VerificationReport;
use crate::linalg::{char_poly, Matrix};
use crate::poly::Poly;
use crate::realizations::{
    build_vd, q_pow, AwRealization, CentralCharacter, DahaFamily, DahaSpec, RealizationError,
    Twist, VdSpec,
};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("no invariant subspace found in a reducible subquotient of dimension {dim}; its spectra do not split over the working field")]
    NonSplittingSpectrum { dim: usize },
    #[error(transparent)]
    Realization(#[from] RealizationError),
}

/// One composition factor with the invariants used for matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionFactor<F: Field> {
    pub dim: usize,
    pub a: Matrix<F>,
    pub b: Matrix<F>,
    pub c: Matrix<F>,
    pub character: Option<CentralCharacter<F>>,
    pub char_poly_a: Poly<F>,
    pub char_poly_b: Poly<F>,
    pub irreducible: bool,
}

impl<F: Field> CompositionFactor<F> {
    fn new(q: &F, [a, b, c]: [Matrix<F>; 3]) -> Self {
        let aw = AwRealization::new(q.clone(), a, b, c).expect("factor shapes agree");
        let irreducible = burnside_irreducible(&aw.generators());
        CompositionFactor {
            dim: aw.dim(),
            character: aw_central_character(&aw),
            char_poly_a: char_poly(&aw.a),
            char_poly_b: char_poly(&aw.b),
            irreducible,
            a: aw.a,
            b: aw.b,
            c: aw.c,
        }
    }

    fn invariants_match(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.character == other.character
            && self.char_poly_a == other.char_poly_a
            && self.char_poly_b == other.char_poly_b
    }
}

/// Factors listed bottom-up: the first is a submodule of the original
/// module, each later one a submodule of the quotient by the earlier ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSeries<F: Field> {
    pub ambient: usize,
    pub factors: Vec<CompositionFactor<F>>,
}

impl<F: Field> CompositionSeries<F> {
    pub fn dimensions(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.dim).collect()
    }
}

fn collect_factors<F: Field>(
    q: &F,
    gens: [Matrix<F>; 3],
    out: &mut Vec<CompositionFactor<F>>,
) -> Result<(), AnalysisError> {
    let n = gens[0].rows();
    if n == 0 {
        return Ok(());
    }
    if burnside_irreducible(&gens) {
        out.push(CompositionFactor::new(q, gens));
        return Ok(());
    }
    let sub = proper_invariant_subspace(&gens).ok_or(AnalysisError::NonSplittingSpectrum { dim: n })?;
    let lower = gens.clone().map(|g| sub.restrict(&g));
    let upper = gens.map(|g| sub.quotient(&g));
    collect_factors(q, lower, out)?;
    collect_factors(q, upper, out)
}

/// A composition series of the module over the algebra generated by
/// `A, B, C`, refining minimal spin-up subspaces until every piece is
/// absolutely irreducible.
pub fn composition_series_aw<F: Field>(
    m: &AwRealization<F>,
) -> Result<CompositionSeries<F>, AnalysisError> {
    let mut factors = Vec::new();
    collect_factors(&m.q, m.generators(), &mut factors)?;
    Ok(CompositionSeries {
        ambient: m.dim(),
        factors,
    })
}

/// The `V_δ(a, b, c)` predicted as composition factors of the pushforward of
/// `spec` twisted by `twist`. `None` when no prediction is available: odd
/// modules are only classified untwisted.
pub fn predicted_factors<F: Field>(
    spec: &DahaSpec<F>,
    twist: Twist,
) -> Option<Vec<VdSpec<F>>> {
    let q = &spec.q;
    let d = spec.d as i64;
    let [k0, k1, k2, k3] = &spec.k;
    let (k01, k02, k03) = (k0.mul_ref(k1), k0.mul_ref(k2), k0.mul_ref(k3));
    let p = |e: i64| q_pow(q, e);
    let vd = |delta: i64, a: F, b: F, c: F| VdSpec {
        d: delta as usize,
        q: q.clone(),
        a,
        b,
        c,
    };
    let out = match spec.family {
        DahaFamily::E => {
            let h = (d + 1) / 2;
            let up = (d + 3) / 2;
            let down = (d - 1) / 2;
            match twist.value() {
                0 if d == 1 => vec![vd(1, k01.mul_ref(q), k03.mul_ref(q), k02.mul_ref(q))],
                0 => {
                    let params = || (k01.mul_ref(&p(h)), k03.mul_ref(&p(h)), k02.mul_ref(&p(h)));
                    let (a, b, c) = params();
                    let (a2, b2, c2) = params();
                    vec![vd(h, a, b, c), vd((d - 3) / 2, a2, b2, c2)]
                }
                1 => vec![
                    vd(down, k03.mul_ref(&p(h)), k01.mul_ref(&p(up)), k02.mul_ref(&p(h))),
                    vd(down, k03.mul_ref(&p(h)), k01.mul_ref(&p(down)), k02.mul_ref(&p(h))),
                ],
                2 => vec![
                    vd(down, k01.mul_ref(&p(h)), k03.mul_ref(&p(h)), k02.mul_ref(&p(up))),
                    vd(down, k01.mul_ref(&p(h)), k03.mul_ref(&p(h)), k02.mul_ref(&p(down))),
                ],
                _ => vec![
                    vd(down, k03.mul_ref(&p(down)), k01.mul_ref(&p(h)), k02.mul_ref(&p(h))),
                    vd(down, k03.mul_ref(&p(up)), k01.mul_ref(&p(h)), k02.mul_ref(&p(h))),
                ],
            }
        }
        DahaFamily::O => {
            if twist.value() != 0 {
                return None;
            }
            let base = || vd(0, k01.clone(), k03.clone(), k02.clone());
            if d == 0 {
                vec![base()]
            } else {
                let h = d / 2;
                let lower = || {
                    vd(h - 1, k01.mul_ref(&p(h + 1)), k03.mul_ref(&p(h + 1)), k02.mul_ref(&p(h + 1)))
                };
                if k0.mul_ref(k0).is_one() {
                    vec![base(), lower(), lower()]
                } else {
                    vec![
                        vd(h, k01.mul_ref(&p(h)), k03.mul_ref(&p(h)), k02.mul_ref(&p(h))),
                        lower(),
                    ]
                }
            }
        }
    };
    Some(out)
}

/// Matches predicted factors against computed ones on dimension, central
/// character and the characteristic polynomials of `A` and `B`. Passes iff
/// the two multisets agree.
pub fn match_predicted_factors<F: Field>(
    series: &CompositionSeries<F>,
    predicted: &[VdSpec<F>],
) -> Result<VerificationReport, AnalysisError> {
    let mut report = VerificationReport::new();
    let total: usize = series.factors.iter().map(|f| f.dim).sum();
    report.push(
        "factor_dimensions_sum",
        "factor dimensions add up to the module dimension",
        total == series.ambient,
        format!("{total} of {}", series.ambient),
    );
    let all_irreducible = series.factors.iter().all(|f| f.irreducible);
    report.push(
        "factors_irreducible",
        "every computed factor is absolutely irreducible",
        all_irreducible,
        format!("{} factors", series.factors.len()),
    );
    let mut unused: Vec<bool> = vec![true; series.factors.len()];
    let mut missing: Vec<String> = Vec::new();
    for spec in predicted {
        let aw = build_vd(spec)?;
        let want = CompositionFactor::new(&spec.q, aw.generators());
        let hit = series
            .factors
            .iter()
            .enumerate()
            .find(|(i, f)| unused[*i] && f.invariants_match(&want));
        match hit {
            Some((i, _)) => unused[i] = false,
            None => missing.push(format!("V_{}({}, {}, {})", spec.d, spec.a, spec.b, spec.c)),
        }
    }
    let extra = unused.iter().filter(|&&u| u).count();
    let pass = missing.is_empty() && extra == 0;
    let detail = if pass {
        format!("{} factors matched", predicted.len())
    } else {
        format!("unmatched predictions: [{}]; unmatched factors: {extra}", missing.join(", "))
    };
    report.push(
        "factors_match_prediction",
        "computed composition factors agree with the predicted V_d modules as a multiset",
        pass,
        detail,
    );
    Ok(report)
}
