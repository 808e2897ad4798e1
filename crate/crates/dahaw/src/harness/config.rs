use std::fmt;
use std::str::FromStr;

use dahaw_core::scalar::{is_not_root_of_unity_guard, FieldElement};
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::formats::Family;

/// The checks a sweep can run at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteId {
    /// Defining relations of the DAHA, and centrality in the Askey-Wilson
    /// algebra after pushforward (or directly on `V_d`).
    DahaRelations,
    Determinants,
    SpectrumT0t1,
    /// Closed-form irreducibility criterion against the algebra dimension.
    Irreducibility,
    CompositionFactors,
    /// Diagonalizable on the module, on every factor, multiplicity-free on
    /// every factor, and Leonard pairs and triples on every factor.
    DiagonalizabilityTheorem,
    PredicateLemmas,
    ExampleBE,
    ExampleBO,
}

impl SuiteId {
    pub const ALL: [SuiteId; 9] = [
        SuiteId::DahaRelations,
        SuiteId::Determinants,
        SuiteId::SpectrumT0t1,
        SuiteId::Irreducibility,
        SuiteId::CompositionFactors,
        SuiteId::DiagonalizabilityTheorem,
        SuiteId::PredicateLemmas,
        SuiteId::ExampleBE,
        SuiteId::ExampleBO,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::DahaRelations => "daha_relations",
            SuiteId::Determinants => "determinants",
            SuiteId::SpectrumT0t1 => "spectrum_t0t1",
            SuiteId::Irreducibility => "irreducibility",
            SuiteId::CompositionFactors => "composition_factors",
            SuiteId::DiagonalizabilityTheorem => "diagonalizability_theorem",
            SuiteId::PredicateLemmas => "predicate_lemmas",
            SuiteId::ExampleBE => "example_b_e",
            SuiteId::ExampleBO => "example_b_o",
        }
    }

    pub fn applies_to(self, family: Family) -> bool {
        match self {
            SuiteId::DahaRelations | SuiteId::Irreducibility | SuiteId::PredicateLemmas => true,
            SuiteId::Determinants
            | SuiteId::SpectrumT0t1
            | SuiteId::CompositionFactors
            | SuiteId::DiagonalizabilityTheorem => family != Family::Vd,
            SuiteId::ExampleBE => family == Family::E,
            SuiteId::ExampleBO => family == Family::O,
        }
    }

    /// Whether grid points are repeated for each configured twist.
    pub fn uses_twist(self, family: Family) -> bool {
        match self {
            SuiteId::DahaRelations | SuiteId::Determinants => family != Family::Vd,
            SuiteId::CompositionFactors | SuiteId::DiagonalizabilityTheorem => {
                family == Family::E
            }
            _ => false,
        }
    }

    /// Whether the suite's statements assume an irreducible module, so that
    /// sampled points failing the criterion are redrawn.
    pub fn needs_irreducible(self) -> bool {
        matches!(
            self,
            SuiteId::CompositionFactors
                | SuiteId::DiagonalizabilityTheorem
                | SuiteId::PredicateLemmas
                | SuiteId::ExampleBE
                | SuiteId::ExampleBO
        )
    }

    /// Whether the suite compares a closed-form predicate with a matrix-level
    /// property, so the grid must contain points where the predicate fails.
    pub fn is_criterion_suite(self) -> bool {
        matches!(
            self,
            SuiteId::Irreducibility | SuiteId::PredicateLemmas | SuiteId::DiagonalizabilityTheorem
        )
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteId::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown suite {s:?}")))
    }
}

/// How free parameters are drawn. Scalars are in the textual scalar syntax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Sampler {
    /// `count` draws per family, `d` and `q`. With `laurent` each value is
    /// `c q^e` with `e` in `[-d-2, d+2]`; otherwise a plain rational. Both
    /// use `c = ±n/m`, `n, m` in `1..=9`.
    Random {
        seed: u64,
        count: usize,
        #[serde(default)]
        laurent: Option<bool>,
    },
    /// Every combination of pool values for the free parameters.
    Pool { values: Vec<String> },
    /// Parameter lists given in full (`a, b, c` or `k0..k3`, one `auto`
    /// allowed).
    Explicit { points: Vec<Vec<String>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub suites: Vec<SuiteId>,
    pub families: Vec<Family>,
    /// Values of `d`; each family keeps the ones of its parity.
    pub d_values: Vec<usize>,
    pub q_values: Vec<String>,
    pub sampler: Sampler,
    #[serde(default = "default_twists")]
    pub twists: Vec<u8>,
    /// Adds constructed points on which the compared predicates fail.
    #[serde(default = "default_true")]
    pub boundary: bool,
}

fn default_twists() -> Vec<u8> {
    vec![0]
}

fn default_true() -> bool {
    true
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let err = |m: String| Err(HarnessError::Config(m));
        if self.suites.is_empty() || self.families.is_empty() {
            return err("at least one suite and one family are required".into());
        }
        if self.d_values.is_empty() || self.q_values.is_empty() {
            return err("d_values and q_values must be nonempty".into());
        }
        for q in &self.q_values {
            let parsed: FieldElement = q
                .parse()
                .map_err(|e| HarnessError::Config(format!("q value {q:?}: {e}")))?;
            if !is_not_root_of_unity_guard(&parsed) {
                return err(format!("q value {q:?} is 0 or a root of unity"));
            }
        }
        if let Some(t) = self.twists.iter().find(|&&t| t > 3) {
            return err(format!("twist {t} is outside 0..3"));
        }
        if self.twists.is_empty() {
            return err("twists must be nonempty".into());
        }
        match &self.sampler {
            Sampler::Random { count: 0, .. } => return err("sampler count must be positive".into()),
            Sampler::Pool { values } if values.is_empty() => {
                return err("sampler pool must be nonempty".into())
            }
            _ => {}
        }
        if !self.boundary {
            if let Some(s) = self.suites.iter().find(|s| s.is_criterion_suite()) {
                return err(format!(
                    "suite {s} compares a predicate with a matrix property and needs boundary points"
                ));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let cfg: SweepConfig =
            serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}
