use std::collections::HashSet;

use dahaw_core::analysis::{among_q_powers, criterion_daha, criterion_vd, stepped_exponents};
use dahaw_core::realizations::{inv, q_pow, solve_o_k3, DahaSpec, VdSpec};
use dahaw_core::{Field, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::{Sampler, SuiteId, SweepConfig};
use super::HarnessError;
use crate::formats::{scalar_token, Family, ModuleRequest, Params, WorkingField};

/// One grid point: a suite applied to one module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    pub suite: SuiteId,
    pub family: Family,
    pub d: usize,
    pub q: String,
    /// `a, b, c` or `k0..k3`.
    pub params: Vec<String>,
    pub twist: u8,
    /// `sampled`, `example` or `boundary:<what was forced>`.
    pub origin: String,
}

impl Point {
    /// Self-describing and unique within a grid.
    pub fn id(&self) -> String {
        format!(
            "{}/{}/d={}/q={}/p={}/eps={}/{}",
            self.suite,
            self.family,
            self.d,
            self.q,
            self.params.join(","),
            self.twist,
            self.origin
        )
    }

    pub fn request(&self) -> ModuleRequest {
        let params = match self.family {
            Family::Vd => Params {
                a: self.params.first().cloned(),
                b: self.params.get(1).cloned(),
                c: self.params.get(2).cloned(),
                ..Params::default()
            },
            _ => Params {
                k: Some(self.params.clone()),
                ..Params::default()
            },
        };
        ModuleRequest {
            family: self.family,
            d: self.d,
            q: self.q.clone(),
            params,
            twist: self.twist,
        }
    }
}

fn parity_fits(family: Family, d: usize) -> bool {
    match family {
        Family::Vd => true,
        Family::E => d % 2 == 1,
        Family::O => d % 2 == 0,
    }
}

/// Every grid point of the configuration, in a fixed order.
pub fn generate(cfg: &SweepConfig) -> Result<Vec<Point>, HarnessError> {
    cfg.validate()?;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for &suite in &cfg.suites {
        for (fi, &family) in cfg.families.iter().enumerate() {
            if !suite.applies_to(family) {
                continue;
            }
            for (di, &d) in cfg.d_values.iter().enumerate() {
                if !parity_fits(family, d) {
                    continue;
                }
                for (qi, q) in cfg.q_values.iter().enumerate() {
                    let stream = ((fi * cfg.d_values.len() + di) * cfg.q_values.len() + qi) as u64;
                    let symbolic = crate::formats::q_is_symbolic(q)
                        .map_err(|e| HarnessError::Config(e.to_string()))?;
                    let cells = if symbolic {
                        cell::<dahaw_core::RationalFunction>(cfg, suite, family, d, q, stream, true)?
                    } else {
                        cell::<Rational>(cfg, suite, family, d, q, stream, false)?
                    };
                    let twists: Vec<u8> = if suite.uses_twist(family) {
                        cfg.twists.clone()
                    } else {
                        vec![0]
                    };
                    for (params, origin) in cells {
                        for &twist in &twists {
                            let p = Point {
                                suite,
                                family,
                                d,
                                q: q.clone(),
                                params: params.clone(),
                                twist,
                                origin: origin.clone(),
                            };
                            if seen.insert(p.id()) {
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

struct Drawer<F> {
    rng: ChaCha8Rng,
    q: F,
    d: usize,
    laurent: bool,
}

impl<F: WorkingField> Drawer<F> {
    fn new(seed: u64, stream: u64, q: F, d: usize, laurent: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Drawer { rng, q, d, laurent }
    }

    fn scalar(&mut self) -> F {
        let n: i64 = self.rng.random_range(1..=9);
        let m: i64 = self.rng.random_range(1..=9);
        let sign = if self.rng.random_bool(0.5) { 1 } else { -1 };
        let c = F::from_rational(&Rational::new(sign * n, m).expect("nonzero denominator"));
        if self.laurent {
            let r = self.d as i64 + 2;
            let e = self.rng.random_range(-r..=r);
            c.mul_ref(&q_pow(&self.q, e))
        } else {
            c
        }
    }

    fn sign(&mut self) -> F {
        if self.rng.random_bool(0.5) {
            F::one()
        } else {
            -F::one()
        }
    }

    /// Free parameters of one candidate module.
    fn base(&mut self, family: Family) -> Vec<F> {
        match family {
            Family::Vd => vec![self.scalar(), self.scalar(), self.scalar()],
            Family::E => {
                let k0 = self.sign().mul_ref(&q_pow(&self.q, -((self.d as i64 + 1) / 2)));
                vec![k0, self.scalar(), self.scalar(), self.scalar()]
            }
            Family::O => {
                let (k0, k1, k2) = (self.scalar(), self.scalar(), self.scalar());
                let k3 = solve_o_k3(self.d, &self.q, &k0, &k1, &k2).expect("nonzero draws");
                vec![k0, k1, k2, k3]
            }
        }
    }
}

/// `Some(criterion value)` when the parameters form a valid spec.
fn criterion<F: WorkingField>(family: Family, d: usize, q: &F, p: &[F]) -> Option<bool> {
    match family {
        Family::Vd => VdSpec::new(d, q.clone(), p[0].clone(), p[1].clone(), p[2].clone())
            .ok()
            .map(|s| criterion_vd(&s)),
        Family::E => DahaSpec::e(d, q.clone(), [p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()])
            .ok()
            .map(|s| criterion_daha(&s)),
        Family::O => DahaSpec::o(d, q.clone(), [p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()])
            .ok()
            .map(|s| criterion_daha(&s)),
    }
}

fn tokens<F: Field>(p: &[F]) -> Vec<String> {
    p.iter().map(scalar_token).collect()
}

/// Completes an `O` parameter list with exactly one unknown entry.
fn o_complete<F: WorkingField>(d: usize, q: &F, k: [Option<F>; 4]) -> Option<Vec<F>> {
    let missing = k.iter().position(Option::is_none)?;
    let given: Vec<F> = k.iter().flatten().cloned().collect();
    if given.len() != 3 || given.iter().any(Field::is_zero) {
        return None;
    }
    let solved = solve_o_k3(d, q, &given[0], &given[1], &given[2])?;
    let mut out: Vec<F> = Vec::with_capacity(4);
    let mut it = given.into_iter();
    for i in 0..4 {
        out.push(if i == missing { solved.clone() } else { it.next()? });
    }
    Some(out)
}

type Cell = Vec<(Vec<String>, String)>;

fn cell<F: WorkingField>(
    cfg: &SweepConfig,
    suite: SuiteId,
    family: Family,
    d: usize,
    q_text: &str,
    stream: u64,
    symbolic: bool,
) -> Result<Cell, HarnessError> {
    let q = F::parse_q(q_text).map_err(|e| HarnessError::Config(e.to_string()))?;
    let keep = |p: &[F]| match criterion(family, d, &q, p) {
        None => false,
        Some(irreducible) => irreducible || !suite.needs_irreducible(),
    };
    let mut out: Cell = Vec::new();
    let (seed, laurent) = match &cfg.sampler {
        Sampler::Random { seed, laurent, .. } => (*seed, laurent.unwrap_or(symbolic)),
        _ => (0, symbolic),
    };

    match suite {
        SuiteId::ExampleBE | SuiteId::ExampleBO => {
            let free: Vec<F> = match &cfg.sampler {
                Sampler::Random { count, .. } => {
                    let mut dr = Drawer::new(seed, stream, q.clone(), d, laurent);
                    (0..count * 50).map(|_| dr.scalar()).collect()
                }
                Sampler::Pool { values } => parse_all(values, &q)?,
                Sampler::Explicit { points } => {
                    let firsts: Vec<String> =
                        points.iter().filter_map(|p| p.first().cloned()).collect();
                    parse_all(&firsts, &q)?
                }
            };
            let limit = match &cfg.sampler {
                Sampler::Random { count, .. } => *count,
                _ => usize::MAX,
            };
            for x in free {
                if out.len() >= limit {
                    break;
                }
                if let Some(p) = example_point(suite, d, &q, x) {
                    if criterion(family, d, &q, &p) == Some(true) {
                        out.push((tokens(&p), "example".into()));
                    }
                }
            }
            return Ok(out);
        }
        _ => {}
    }

    match &cfg.sampler {
        Sampler::Random { count, .. } => {
            let mut dr = Drawer::new(seed, stream, q.clone(), d, laurent);
            let mut attempts = 0;
            while out.len() < *count && attempts < count * 50 {
                attempts += 1;
                let p = dr.base(family);
                if keep(&p) {
                    out.push((tokens(&p), "sampled".into()));
                }
            }
        }
        Sampler::Pool { values } => {
            let vals = parse_all(values, &q)?;
            for x in &vals {
                for y in &vals {
                    for z in &vals {
                        let p: Option<Vec<F>> = match family {
                            Family::Vd => Some(vec![x.clone(), y.clone(), z.clone()]),
                            Family::E => Some(vec![
                                q_pow(&q, -((d as i64 + 1) / 2)),
                                x.clone(),
                                y.clone(),
                                z.clone(),
                            ]),
                            Family::O => {
                                o_complete(d, &q, [Some(x.clone()), Some(y.clone()), Some(z.clone()), None])
                            }
                        };
                        if let Some(p) = p {
                            if keep(&p) {
                                out.push((tokens(&p), "sampled".into()));
                            }
                        }
                    }
                }
            }
        }
        Sampler::Explicit { points } => {
            for raw in points {
                let req = Point {
                    suite,
                    family,
                    d,
                    q: q_text.to_string(),
                    params: raw.clone(),
                    twist: 0,
                    origin: String::new(),
                }
                .request();
                let m = req
                    .resolve::<F>()
                    .map_err(|e| HarnessError::Config(format!("explicit point {raw:?}: {e}")))?;
                out.push((tokens(&m.params()), "explicit".into()));
            }
        }
    }

    if cfg.boundary {
        let mut dr = Drawer::new(seed, stream | (1 << 40), q.clone(), d, laurent);
        for (p, label) in boundary_points(suite, family, d, &q, &mut dr) {
            out.push((tokens(&p), format!("boundary:{label}")));
        }
    }
    Ok(out)
}

fn parse_all<F: WorkingField>(values: &[String], q: &F) -> Result<Vec<F>, HarnessError> {
    values
        .iter()
        .map(|v| F::parse_scalar(v, q).map_err(|e| HarnessError::Config(format!("{v:?}: {e}"))))
        .collect()
}

fn example_point<F: WorkingField>(suite: SuiteId, d: usize, q: &F, x: F) -> Option<Vec<F>> {
    let d = d as i64;
    if x.is_zero() {
        return None;
    }
    if suite == SuiteId::ExampleBE {
        // k2 must avoid q^((3d-3)/2), q^((3d-7)/2), ..., q^((3-3d)/2).
        let hi = (3 * d - 3) / 2;
        if among_q_powers(&x, q, stepped_exponents(hi, -hi)) {
            return None;
        }
        let k0 = q_pow(q, -(d + 1) / 2);
        let k13 = q_pow(q, (d - 1) / 2);
        Some(vec![k0, k13.clone(), x, k13])
    } else {
        let k0sq = x.mul_ref(&x);
        if among_q_powers(&k0sq, q, stepped_exponents(-2, 2 - 3 * d)) {
            return None;
        }
        let qd = q_pow(q, -d);
        let k1 = qd.mul_ref(&inv(&x));
        let k2 = q_pow(q, d - 1).mul_ref(&x);
        Some(vec![x, k1.clone(), k2, k1])
    }
}

/// Points constructed so that a compared predicate fails. Each constructor
/// retries with fresh base parameters until the point is a valid spec and,
/// where the suite assumes it, irreducible.
fn boundary_points<F: WorkingField>(
    suite: SuiteId,
    family: Family,
    d: usize,
    q: &F,
    dr: &mut Drawer<F>,
) -> Vec<(Vec<F>, String)> {
    let di = d as i64;
    let qp = |e: i64| q_pow(q, e);
    type Build<F> = Box<dyn Fn(&F, &[F]) -> Option<Vec<F>>>;
    let mut builders: Vec<(String, Build<F>)> = Vec::new();
    let needs_irreducible = suite.needs_irreducible();

    match (suite, family) {
        (SuiteId::Irreducibility, Family::Vd) => {
            for i in 1..=di {
                let t = qp(2 * i - di - 1);
                for form in 0..4 {
                    let t = t.clone();
                    builders.push((
                        format!("product{form}=q^{}", 2 * i - di - 1),
                        Box::new(move |_q: &F, b: &[F]| {
                            let (a, bb) = (&b[0], &b[1]);
                            let c = match form {
                                0 => t.mul_ref(&inv(&a.mul_ref(bb))),
                                1 => t.mul_ref(a).mul_ref(&inv(bb)),
                                2 => t.mul_ref(bb).mul_ref(&inv(a)),
                                _ => a.mul_ref(bb).mul_ref(&inv(&t)),
                            };
                            Some(vec![a.clone(), bb.clone(), c])
                        }),
                    ));
                }
            }
        }
        (SuiteId::Irreducibility, Family::E) => {
            for i in (1..=di).filter(|i| i % 2 == 1) {
                let t = qp(-i);
                for form in 0..4 {
                    let t = t.clone();
                    builders.push((
                        format!("product{form}=q^-{i}"),
                        Box::new(move |_q: &F, b: &[F]| {
                            let (k0, k2, k3) = (&b[0], &b[2], &b[3]);
                            let k1 = match form {
                                0 => t.mul_ref(&inv(&k0.mul_ref(k2).mul_ref(k3))),
                                1 => k0.mul_ref(k2).mul_ref(k3).mul_ref(&inv(&t)),
                                2 => t.mul_ref(k2).mul_ref(&inv(&k0.mul_ref(k3))),
                                _ => t.mul_ref(k3).mul_ref(&inv(&k0.mul_ref(k2))),
                            };
                            Some(vec![k0.clone(), k1, k2.clone(), k3.clone()])
                        }),
                    ));
                }
            }
        }
        (SuiteId::Irreducibility, Family::O) => {
            for i in (2..=di).filter(|i| i % 2 == 0) {
                for j in 0..4usize {
                    let kj = qp(-i / 2);
                    builders.push((
                        format!("k{j}^2=q^-{i}"),
                        Box::new(move |q: &F, b: &[F]| {
                            let mut k: [Option<F>; 4] = core::array::from_fn(|x| Some(b[x].clone()));
                            k[j] = Some(kj.clone());
                            k[if j == 3 { 2 } else { 3 }] = None;
                            o_complete(d, q, k)
                        }),
                    ));
                }
            }
        }
        (SuiteId::PredicateLemmas, Family::Vd) if d >= 1 => {
            for which in 0..3usize {
                let x = qp(di - 1);
                builders.push((
                    format!("{}=q^{}", ["a", "b", "c"][which], di - 1),
                    Box::new(move |_q: &F, b: &[F]| {
                        let mut p = b.to_vec();
                        p[which] = x.clone();
                        Some(p)
                    }),
                ));
            }
        }
        (
            SuiteId::PredicateLemmas
            | SuiteId::CompositionFactors
            | SuiteId::DiagonalizabilityTheorem,
            Family::E,
        ) => {
            let mut exps = vec![(di - 1) / 2];
            if d >= 3 {
                exps.push((di - 3) / 2);
            }
            for e in exps {
                for j in 1..4usize {
                    let x = qp(e);
                    builders.push((
                        format!("k{j}=q^{e}"),
                        Box::new(move |_q: &F, b: &[F]| {
                            let mut p = b.to_vec();
                            p[j] = x.clone();
                            Some(p)
                        }),
                    ));
                }
            }
        }
        (
            SuiteId::PredicateLemmas
            | SuiteId::CompositionFactors
            | SuiteId::DiagonalizabilityTheorem,
            Family::O,
        ) => {
            let mut targets = vec![-1];
            if d >= 4 {
                targets.push(1 - di);
            }
            for e in targets {
                for j in 1..4usize {
                    let t = qp(e);
                    builders.push((
                        format!("k0k{j}=q^{e}"),
                        Box::new(move |q: &F, b: &[F]| {
                            let mut k: [Option<F>; 4] = core::array::from_fn(|x| Some(b[x].clone()));
                            k[j] = Some(t.mul_ref(&inv(&b[0])));
                            k[if j == 3 { 2 } else { 3 }] = None;
                            o_complete(d, q, k)
                        }),
                    ));
                }
            }
            for sign in [1i64, -1] {
                let s = F::from_i64(sign);
                builders.push((
                    format!("k0={sign}"),
                    Box::new(move |q: &F, b: &[F]| {
                        let k = [Some(s.clone()), Some(b[1].clone()), Some(b[2].clone()), None];
                        o_complete(d, q, k)
                    }),
                ));
            }
            if d >= 4 {
                for j in 1..4usize {
                    let x = qp(-3);
                    builders.push((
                        format!("k0=1,k{j}=q^-3"),
                        Box::new(move |q: &F, b: &[F]| {
                            let mut k: [Option<F>; 4] = core::array::from_fn(|i| Some(b[i].clone()));
                            k[0] = Some(F::one());
                            k[j] = Some(x.clone());
                            k[if j == 3 { 2 } else { 3 }] = None;
                            o_complete(d, q, k)
                        }),
                    ));
                }
            }
        }
        _ => {}
    }

    let mut out = Vec::new();
    for (label, build) in builders {
        for _ in 0..40 {
            let base = dr.base(family);
            let Some(p) = build(q, &base) else { continue };
            let Some(irreducible) = criterion(family, d, q, &p) else {
                continue;
            };
            if irreducible || !needs_irreducible {
                out.push((p, label));
                break;
            }
        }
    }
    out
}

/// Seeded parameters (`a, b, c` or `k0..k3`) of a module satisfying its
/// irreducibility criterion.
pub fn sample_irreducible(
    family: Family,
    d: usize,
    q_text: &str,
    seed: u64,
) -> Result<Vec<String>, HarnessError> {
    let symbolic =
        crate::formats::q_is_symbolic(q_text).map_err(|e| HarnessError::Config(e.to_string()))?;
    if symbolic {
        sample_in::<dahaw_core::RationalFunction>(family, d, q_text, seed, true)
    } else {
        sample_in::<Rational>(family, d, q_text, seed, false)
    }
}

fn sample_in<F: WorkingField>(
    family: Family,
    d: usize,
    q_text: &str,
    seed: u64,
    laurent: bool,
) -> Result<Vec<String>, HarnessError> {
    if !parity_fits(family, d) {
        return Err(HarnessError::Config(format!("{family} modules need d of the other parity")));
    }
    let q = F::parse_q(q_text).map_err(|e| HarnessError::Config(e.to_string()))?;
    let mut dr = Drawer::new(seed, 0, q.clone(), d, laurent);
    for _ in 0..1000 {
        let p = dr.base(family);
        if criterion(family, d, &q, &p) == Some(true) {
            return Ok(tokens(&p));
        }
    }
    Err(HarnessError::Config("no irreducible parameters found".into()))
}
