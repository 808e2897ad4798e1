//! Text and JSON boundaries: scalars, matrices, module specs and reports.

use std::fmt;
use std::str::FromStr;

use dahaw_core::analysis::{Check, VerificationReport};
use dahaw_core::linalg::Matrix;
use dahaw_core::realizations::{
    build_daha, build_vd, solve_e_k0, solve_o_k3, twist, DahaRealization, DahaSpec,
    RealizationError, Twist, VdSpec,
};
use dahaw_core::scalar::{specialize, FieldElement, ScalarError};
use dahaw_core::{Field, Rational, RationalFunction};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

/// A field computations can run over, with a way to read scalar text in the
/// presence of a chosen `q`.
pub trait WorkingField: Field {
    /// Reads `q` itself.
    fn parse_q(s: &str) -> Result<Self, FormatError>;
    /// Reads a scalar; text mentioning `q` is evaluated at `q`.
    fn parse_scalar(s: &str, q: &Self) -> Result<Self, FormatError>;
}

impl WorkingField for Rational {
    fn parse_q(s: &str) -> Result<Self, FormatError> {
        match s.parse::<FieldElement>()? {
            FieldElement::Rational(r) => Ok(r),
            FieldElement::Function(_) => Err(invalid(format!("q = {s:?} is not a rational number"))),
        }
    }

    fn parse_scalar(s: &str, q: &Self) -> Result<Self, FormatError> {
        Ok(match s.parse::<FieldElement>()? {
            FieldElement::Rational(r) => r,
            FieldElement::Function(f) => specialize(&f, q)?,
        })
    }
}

impl WorkingField for RationalFunction {
    fn parse_q(s: &str) -> Result<Self, FormatError> {
        Ok(s.parse::<FieldElement>()?.to_function())
    }

    fn parse_scalar(s: &str, q: &Self) -> Result<Self, FormatError> {
        let f = s.parse::<FieldElement>()?.to_function();
        if *q == RationalFunction::q() {
            return Ok(f);
        }
        // Substitute the chosen q for the formal variable.
        let n = f.numer().coeffs().iter().rev().fold(RationalFunction::zero(), |acc, c| {
            acc.mul_ref(q) + &RationalFunction::constant(c.clone())
        });
        let d = f.denom().coeffs().iter().rev().fold(RationalFunction::zero(), |acc, c| {
            acc.mul_ref(q) + &RationalFunction::constant(c.clone())
        });
        n.div_ref(&d).ok_or(FormatError::Scalar(ScalarError::DivisionByZero))
    }
}

/// Whether `q` text denotes a symbolic parameter rather than a rational.
pub fn q_is_symbolic(s: &str) -> Result<bool, FormatError> {
    Ok(matches!(s.parse::<FieldElement>()?, FieldElement::Function(_)))
}

/// A scalar as a single whitespace-free token.
pub fn scalar_token<F: Field>(x: &F) -> String {
    x.to_string().chars().filter(|c| !c.is_whitespace()).collect()
}

/// `n` on the first line, then `n` rows of `n` scalar tokens.
pub fn write_matrix<F: Field>(m: &Matrix<F>) -> String {
    let mut out = format!("{}\n", m.rows());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(scalar_token).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_matrix<F: WorkingField>(text: &str, q: &F) -> Result<Matrix<F>, FormatError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| invalid("empty matrix text"))?
        .parse()
        .map_err(|_| invalid("first line must be the dimension"))?;
    if n == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| invalid(format!("missing row {i}")))?;
        let row = line
            .split_whitespace()
            .map(|t| F::parse_scalar(t, q))
            .collect::<Result<Vec<F>, _>>()?;
        if row.len() != n {
            return Err(invalid(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    if lines.next().is_some() {
        return Err(invalid("trailing rows after the matrix"));
    }
    Matrix::from_rows(rows).map_err(|e| invalid(e.to_string()))
}

pub fn matrix_json<F: Field>(m: &Matrix<F>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(scalar_token(x))).collect()))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Vd,
    E,
    O,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Vd => "Vd",
            Family::E => "E",
            Family::O => "O",
        })
    }
}

impl FromStr for Family {
    type Err = FormatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Vd" | "vd" | "V" => Ok(Family::Vd),
            "E" | "e" => Ok(Family::E),
            "O" | "o" => Ok(Family::O),
            _ => Err(invalid(format!("unknown family {s:?}; expected Vd, E or O"))),
        }
    }
}

/// Parameter fields of a spec file. `k` lists `k0..k3`; a three-entry `k`
/// for `E` lists `k1..k3` with `k0` given separately or solved.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
}

/// `{ "family", "d", "q", "params", "twist" }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleRequest {
    pub family: Family,
    pub d: usize,
    pub q: String,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub twist: u8,
}

/// A module with its parameters read into a working field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Module<F> {
    Vd(VdSpec<F>),
    Daha { spec: DahaSpec<F>, twist: Twist },
}

impl<F: Field> Module<F> {
    pub fn q(&self) -> &F {
        match self {
            Module::Vd(s) => &s.q,
            Module::Daha { spec, .. } => &spec.q,
        }
    }

    /// `[a, b, c]` or `[k0, k1, k2, k3]`.
    pub fn params(&self) -> Vec<F> {
        match self {
            Module::Vd(s) => vec![s.a.clone(), s.b.clone(), s.c.clone()],
            Module::Daha { spec, .. } => spec.k.to_vec(),
        }
    }

    pub fn twist(&self) -> Twist {
        match self {
            Module::Vd(_) => Twist::default(),
            Module::Daha { twist, .. } => *twist,
        }
    }

    /// The twisted DAHA realization, for `E` and `O` modules.
    pub fn daha(&self) -> Result<Option<DahaRealization<F>>, FormatError> {
        match self {
            Module::Vd(_) => Ok(None),
            Module::Daha { spec, twist: eps } => Ok(Some(twist(&build_daha(spec)?, *eps))),
        }
    }

    pub fn aw(&self) -> Result<dahaw_core::realizations::AwRealization<F>, FormatError> {
        match self {
            Module::Vd(s) => Ok(build_vd(s)?),
            Module::Daha { .. } => Ok(dahaw_core::realizations::push_to_aw(
                &self.daha()?.expect("DAHA module"),
            )),
        }
    }
}

impl ModuleRequest {
    pub fn is_symbolic(&self) -> Result<bool, FormatError> {
        q_is_symbolic(&self.q)
    }

    /// Reads the parameters into `F`, solving one `auto` entry from the
    /// family's constraint.
    pub fn resolve<F: WorkingField>(&self) -> Result<Module<F>, FormatError> {
        let q = F::parse_q(&self.q)?;
        if !q.passes_q_guard() {
            return Err(ScalarError::ForbiddenQ(self.q.clone()).into());
        }
        let read = |s: &str| F::parse_scalar(s, &q);
        match self.family {
            Family::Vd => {
                let p = &self.params;
                if p.k.is_some() || p.k0.is_some() {
                    return Err(invalid("Vd takes a, b, c"));
                }
                let get = |x: &Option<String>, name: &str| {
                    x.as_deref()
                        .ok_or_else(|| invalid(format!("Vd needs parameter {name}")))
                        .and_then(read)
                };
                Ok(Module::Vd(VdSpec::new(
                    self.d,
                    q.clone(),
                    get(&p.a, "a")?,
                    get(&p.b, "b")?,
                    get(&p.c, "c")?,
                )?))
            }
            Family::E | Family::O => {
                let p = &self.params;
                if p.a.is_some() || p.b.is_some() || p.c.is_some() {
                    return Err(invalid("E and O take k0..k3"));
                }
                let ks = p.k.clone().ok_or_else(|| invalid("missing k"))?;
                let mut texts: Vec<String> = match (ks.len(), &p.k0) {
                    (4, None) => ks,
                    (3, k0) if self.family == Family::E => {
                        let mut v = vec![k0.clone().unwrap_or_else(|| "auto".into())];
                        v.extend(ks);
                        v
                    }
                    (3, Some(k0)) => {
                        let mut v = vec![k0.clone()];
                        v.extend(ks);
                        v
                    }
                    (4, Some(_)) => return Err(invalid("k0 given twice")),
                    (n, _) => return Err(invalid(format!("expected 4 values for k, got {n}"))),
                };
                for t in texts.iter_mut() {
                    *t = t.trim().to_string();
                }
                let autos: Vec<usize> = (0..4).filter(|&i| texts[i] == "auto").collect();
                let mut k: Vec<Option<F>> = texts
                    .iter()
                    .map(|t| if t == "auto" { Ok(None) } else { read(t).map(Some) })
                    .collect::<Result<_, _>>()?;
                match (self.family, autos.as_slice()) {
                    (_, []) => {}
                    (Family::E, [0]) => {
                        k[0] = Some(solve_e_k0(self.d, &q).ok_or_else(|| {
                            invalid("k0^2 = q^(-d-1) has no solution: d must be odd")
                        })?);
                    }
                    (Family::E, _) => return Err(invalid("for E only k0 may be auto")),
                    (Family::O, [i]) => {
                        let others: Vec<F> = (0..4)
                            .filter(|j| j != i)
                            .map(|j| k[j].clone().expect("given"))
                            .collect();
                        // The product constraint is symmetric in k0..k3.
                        k[*i] = Some(
                            solve_o_k3(self.d, &q, &others[0], &others[1], &others[2])
                                .ok_or_else(|| invalid("cannot solve the product constraint"))?,
                        );
                    }
                    (Family::O, _) => return Err(invalid("at most one k may be auto")),
                    (Family::Vd, _) => unreachable!(),
                }
                let k: [F; 4] = k
                    .into_iter()
                    .map(|x| x.expect("resolved"))
                    .collect::<Vec<_>>()
                    .try_into()
                    .expect("four values");
                let spec = if self.family == Family::E {
                    DahaSpec::e(self.d, q, k)?
                } else {
                    DahaSpec::o(self.d, q, k)?
                };
                if self.twist > 3 {
                    return Err(invalid("twist must be 0..3"));
                }
                Ok(Module::Daha {
                    spec,
                    twist: Twist::new(self.twist as i64),
                })
            }
        }
    }

    /// The request describing a resolved module, parameters printed in full.
    pub fn from_module<F: Field>(family: Family, q_text: &str, m: &Module<F>) -> Self {
        let params = m.params();
        let d = match m {
            Module::Vd(s) => s.d,
            Module::Daha { spec, .. } => spec.d,
        };
        let params = match family {
            Family::Vd => Params {
                a: Some(scalar_token(&params[0])),
                b: Some(scalar_token(&params[1])),
                c: Some(scalar_token(&params[2])),
                ..Params::default()
            },
            _ => Params {
                k: Some(params.iter().map(scalar_token).collect()),
                ..Params::default()
            },
        };
        ModuleRequest {
            family,
            d,
            q: q_text.to_string(),
            params,
            twist: m.twist().value(),
        }
    }
}

pub fn check_json(c: &Check) -> Value {
    json!({
        "check": c.id,
        "statement": c.statement,
        "pass": c.pass,
        "detail": c.detail,
    })
}

pub fn report_json(r: &VerificationReport) -> Value {
    Value::Array(r.checks.iter().map(check_json).collect())
}

pub fn report_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        out.push_str(&format!(
            "[{}] {}: {}",
            if c.pass { "pass" } else { "FAIL" },
            c.id,
            c.statement
        ));
        if !c.detail.is_empty() {
            out.push_str(&format!(" ({})", c.detail));
        }
        out.push('\n');
    }
    out
}
