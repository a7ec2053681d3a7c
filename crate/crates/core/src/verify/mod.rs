//! Batch verification: parameter sweeps over the inequalities, regeneration of
//! the relative-error tables, tightness probes, and the named suites that tie
//! them together.
//!
//! Grid points are independent and evaluated in parallel; results are always
//! merged back in grid order, so reports do not depend on scheduling.

mod probes;
mod suites;
mod tables;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{evaluate, BoundPoint, BoundReport, InequalityId};
use crate::error::{Error, Result};
use crate::EvalConfig;

pub use probes::{approaches_one, tightness_probe, Direction, ProbeSample};
pub use suites::{
    derivative_residual, equality_iff_undamped, inequality_grids, recurrence_residual, run_suite,
    three_term_residual, CheckResult, Suite, SuiteReport, IDENTITY_NU, IDENTITY_X, SWEEP_MARGIN,
};
pub use tables::{
    compare_with_reference, error_table, reference_table, regenerate_table, round4, CellComparison,
    ErrorTable, TableComparison, TableKind, REFERENCE_LOWER, REFERENCE_UPPER, TABLE_CELL_TOLERANCE,
    TABLE_NU, TABLE_X,
};

/// Parameter grid for one inequality. Axes are sorted and duplicate-free;
/// axes the inequality does not use collapse to the single value 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub inequality: InequalityId,
    pub nu: Vec<f64>,
    pub n: Vec<f64>,
    pub gamma: Vec<f64>,
    pub x: Vec<f64>,
}

fn normalize_axis(name: &str, mut values: Vec<f64>) -> Result<Vec<f64>> {
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::Config(format!(
            "{name} grid contains a non-finite value {v}"
        )));
    }
    values.sort_by(f64::total_cmp);
    values.dedup();
    Ok(values)
}

impl SweepGrid {
    pub fn new(
        inequality: InequalityId,
        nu: Vec<f64>,
        n: Vec<f64>,
        gamma: Vec<f64>,
        x: Vec<f64>,
    ) -> Result<Self> {
        let n = if inequality.uses_n() {
            normalize_axis("n", n)?
        } else {
            vec![0.0]
        };
        let gamma = if inequality.uses_gamma() {
            normalize_axis("gamma", gamma)?
        } else {
            vec![0.0]
        };
        Ok(Self {
            inequality,
            nu: normalize_axis("nu", nu)?,
            n,
            gamma,
            x: normalize_axis("x", x)?,
        })
    }

    /// All grid points in lexicographic (nu, n, gamma, x) order.
    pub fn points(&self) -> Vec<BoundPoint> {
        let mut out =
            Vec::with_capacity(self.nu.len() * self.n.len() * self.gamma.len() * self.x.len());
        for &nu in &self.nu {
            for &n in &self.n {
                for &gamma in &self.gamma {
                    for &x in &self.x {
                        out.push(BoundPoint::new(nu, n, gamma, x));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub point: BoundPoint,
    pub signed_slack: f64,
    pub relative_slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub inequality: InequalityId,
    pub margin: f64,
    pub total: usize,
    /// Points outside the inequality's hypotheses; never counted as passes.
    pub skipped: usize,
    pub evaluated: usize,
    pub violations: Vec<Violation>,
    /// Smallest signed_slack / integral over evaluated points.
    pub min_relative_slack: Option<f64>,
    pub max_relative_slack: Option<f64>,
    pub reports: Vec<BoundReport>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates every in-hypothesis point of `grid`; a point is a violation when
/// its signed slack is below `-margin * integral`.
pub fn sweep(grid: &SweepGrid, margin: f64, config: &EvalConfig) -> Result<SweepReport> {
    let id = grid.inequality;
    let points = grid.points();
    let results: Vec<Result<Option<BoundReport>>> = points
        .par_iter()
        .map(|p| {
            if id.failed_hypothesis(p).is_some() {
                return Ok(None);
            }
            evaluate(id, p, config)
                .map(Some)
                .map_err(|e| e.with_context(format!("{id} at {p:?}")))
        })
        .collect();

    let mut reports = Vec::new();
    let mut skipped = 0;
    for r in results {
        match r? {
            Some(rep) => reports.push(rep),
            None => skipped += 1,
        }
    }
    let violations = reports
        .iter()
        .filter(|r| !r.holds_with_margin(margin))
        .map(|r| Violation {
            point: r.point,
            signed_slack: r.signed_slack,
            relative_slack: r.relative_error,
        })
        .collect();
    let rel = reports.iter().map(|r| r.relative_error);
    Ok(SweepReport {
        inequality: id,
        margin,
        total: points.len(),
        skipped,
        evaluated: reports.len(),
        violations,
        min_relative_slack: rel.clone().reduce(f64::min),
        max_relative_slack: rel.reduce(f64::max),
        reports,
    })
}
