//! Seeded parameter sweeps binding closed-form predicates to matrix-level
//! properties.

use std::collections::BTreeMap;
use std::time::Instant;

use dahaw_core::analysis::VerificationReport;
use rayon::prelude::*;
use serde_json::{json, Value};

pub mod config;
pub mod grid;
pub mod suites;

pub use config::{Sampler, SuiteId, SweepConfig};
pub use grid::{generate, sample_irreducible, Point};
pub use suites::{evaluate, t0t1_spectrum, PointOutcome};

use crate::formats::report_json;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid sweep config: {0}")]
    Config(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointResult {
    pub point: Point,
    pub outcome: PointOutcome,
}

impl PointResult {
    pub fn id(&self) -> String {
        self.point.id()
    }

    pub fn pass(&self) -> bool {
        self.outcome.report.all_pass()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id(),
            "suite": self.point.suite,
            "family": self.point.family,
            "d": self.point.d,
            "q": self.point.q,
            "params": self.point.params,
            "twist": self.point.twist,
            "origin": self.point.origin,
            "pass": self.pass(),
            "predicate_false": self.outcome.predicate_false,
            "checks": report_json(&self.outcome.report),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub points: usize,
    pub points_failed: usize,
    pub checks: usize,
    pub checks_failed: usize,
    pub predicate_false_points: usize,
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub config: SweepConfig,
    pub points: Vec<PointResult>,
    /// One check per (criterion suite, family) that at least one point makes
    /// the compared predicate false.
    pub coverage: VerificationReport,
    pub wall_time_ms: u128,
}

impl SuiteResult {
    pub fn summary(&self) -> Summary {
        let checks = self.points.iter().map(|p| p.outcome.report.checks.len()).sum::<usize>()
            + self.coverage.checks.len();
        let checks_failed = self
            .points
            .iter()
            .map(|p| p.outcome.report.failures().count())
            .sum::<usize>()
            + self.coverage.failures().count();
        Summary {
            points: self.points.len(),
            points_failed: self.points.iter().filter(|p| !p.pass()).count(),
            checks,
            checks_failed,
            predicate_false_points: self.points.iter().filter(|p| p.outcome.predicate_false).count(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary().checks_failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &PointResult> {
        self.points.iter().filter(|p| !p.pass())
    }

    /// Number of predicate-false points per (suite, family).
    pub fn predicate_false_counts(&self) -> BTreeMap<(SuiteId, String), usize> {
        let mut out = BTreeMap::new();
        for p in &self.points {
            let e = out
                .entry((p.point.suite, p.point.family.to_string()))
                .or_insert(0);
            if p.outcome.predicate_false {
                *e += 1;
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let s = self.summary();
        json!({
            "config": self.config,
            "points": self.points.iter().map(PointResult::to_json).collect::<Vec<_>>(),
            "coverage": report_json(&self.coverage),
            "summary": {
                "points": s.points,
                "points_failed": s.points_failed,
                "checks": s.checks,
                "checks_failed": s.checks_failed,
                "predicate_false_points": s.predicate_false_points,
                "all_pass": self.all_pass(),
            },
            "wall_time_ms": self.wall_time_ms,
        })
    }

    pub fn summary_text(&self) -> String {
        let s = self.summary();
        let mut out = format!(
            "{} points, {} failed; {} checks, {} failed; {} predicate-false points\n",
            s.points, s.points_failed, s.checks, s.checks_failed, s.predicate_false_points
        );
        for p in self.failures() {
            out.push_str(&format!("FAIL {}\n", p.id()));
            for c in p.outcome.report.failures() {
                out.push_str(&format!("  {}: {}\n", c.id, c.detail));
            }
        }
        for c in self.coverage.failures() {
            out.push_str(&format!("FAIL coverage {}: {}\n", c.id, c.detail));
        }
        out
    }
}

/// Runs every configured suite at every grid point.
pub fn run_suite(cfg: &SweepConfig) -> Result<SuiteResult, HarnessError> {
    let start = Instant::now();
    let grid = generate(cfg)?;
    let points: Vec<PointResult> = grid
        .into_par_iter()
        .map(|point| {
            let outcome = evaluate(&point);
            PointResult { point, outcome }
        })
        .collect();
    let mut result = SuiteResult {
        config: cfg.clone(),
        points,
        coverage: VerificationReport::new(),
        wall_time_ms: 0,
    };
    let counts = result.predicate_false_counts();
    for ((suite, family), n) in counts {
        if suite.is_criterion_suite() {
            result.coverage.push(
                format!("coverage_{suite}_{family}"),
                "the grid contains a point where the compared predicate fails",
                n > 0,
                format!("{n} predicate-false points"),
            );
        }
    }
    result.wall_time_ms = start.elapsed().as_millis();
    Ok(result)
}

/// Re-executes one point of the grid described by `cfg`.
pub fn replay(cfg: &SweepConfig, id: &str) -> Result<PointResult, HarnessError> {
    let point = generate(cfg)?
        .into_iter()
        .find(|p| p.id() == id)
        .ok_or_else(|| HarnessError::UnknownPoint(id.to_string()))?;
    let outcome = evaluate(&point);
    Ok(PointResult { point, outcome })
}
