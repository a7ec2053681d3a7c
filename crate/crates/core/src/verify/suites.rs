use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::probes::{approaches_one, tightness_probe, Direction};
use super::tables::{
    compare_with_reference, regenerate_table, ErrorTable, TableComparison, TableKind,
    TABLE_CELL_TOLERANCE,
};
use super::{sweep, SweepGrid, SweepReport};
use crate::bounds::{
    bound_b11_upper, bound_b9_lower, corollary_triple, evaluate, BoundPoint, InequalityId,
};
use crate::error::{domain, Error, Result};
use crate::integrate::{
    integral_2f3_form, integral_closed_form_shifted, integral_quadrature, integral_series,
    IntegralSpec,
};
use crate::specfun::{l, ln_gamma_unchecked, struve_l_large_x, struve_l_small_x, LN_SQRT_PI};
use crate::EvalConfig;

/// Margin used for every inequality sweep.
pub const SWEEP_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Identities,
    Inequalities,
    Tables,
    Tightness,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Identities => "identities",
            Suite::Inequalities => "inequalities",
            Suite::Tables => "tables",
            Suite::Tightness => "tightness",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(Suite::All),
            "identities" => Ok(Suite::Identities),
            "inequalities" => Ok(Suite::Inequalities),
            "tables" => Ok(Suite::Tables),
            "tightness" => Ok(Suite::Tightness),
            other => Err(domain(format!("unknown suite '{other}'"))),
        }
    }
}

/// A single named pass/fail check. `worst` is the largest observed deviation
/// in the same units as `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub worst: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<CheckResult>,
    pub sweeps: Vec<SweepReport>,
    pub tables: Vec<TableComparison>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
            && self.sweeps.iter().all(SweepReport::passed)
            && self.tables.iter().all(TableComparison::passed)
    }
}

pub fn run_suite(suite: Suite, config: &EvalConfig) -> Result<SuiteReport> {
    config.validate()?;
    let mut report = SuiteReport {
        suite,
        checks: Vec::new(),
        sweeps: Vec::new(),
        tables: Vec::new(),
    };
    let wanted = |s: Suite| suite == Suite::All || suite == s;
    if wanted(Suite::Identities) {
        report.checks.extend(identity_checks(config)?);
    }
    if wanted(Suite::Inequalities) {
        report.sweeps.extend(inequality_sweeps(config)?);
        report.checks.extend(inequality_checks(config)?);
    }
    if wanted(Suite::Tables) {
        let lower = regenerate_table(TableKind::Lower, config)?;
        let upper = regenerate_table(TableKind::Upper, config)?;
        report
            .tables
            .push(compare_with_reference(&lower, TABLE_CELL_TOLERANCE)?);
        report
            .tables
            .push(compare_with_reference(&upper, TABLE_CELL_TOLERANCE)?);
        report.checks.extend(table_shape_checks(&lower, &upper));
    }
    if wanted(Suite::Tightness) {
        report.checks.extend(tightness_checks(config)?);
    }
    Ok(report)
}

fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Largest relative deviation over labelled (computed, expected) pairs.
fn relative_check(name: &str, tolerance: f64, pairs: Vec<(String, f64, f64)>) -> CheckResult {
    let mut worst = 0.0;
    let mut at = String::new();
    for (label, computed, expected) in &pairs {
        let d = rel_diff(*computed, *expected);
        if !(d <= worst) {
            worst = d;
            at = label.clone();
        }
    }
    CheckResult {
        name: name.to_string(),
        passed: worst <= tolerance,
        worst,
        tolerance,
        detail: format!(
            "{} points, worst at {}",
            pairs.len(),
            if at.is_empty() { "-" } else { &at }
        ),
    }
}

fn flag_check(name: &str, failures: Vec<String>, total: usize) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: failures.is_empty(),
        worst: failures.len() as f64,
        tolerance: 0.0,
        detail: if failures.is_empty() {
            format!("{total} cases")
        } else {
            format!(
                "{} of {total} failed: {}",
                failures.len(),
                failures.join("; ")
            )
        },
    }
}

/// Orders used by the structural identities; all keep nu - 1 > -3/2.
pub const IDENTITY_NU: [f64; 5] = [-0.4, 0.0, 1.5, 4.0, 10.0];
pub const IDENTITY_X: [f64; 5] = [0.1, 1.0, 7.5, 30.0, 100.0];

/// |L_(nu-1) - L_(nu+1) - (2nu/x) L_nu - (x/2)^nu / (sqrt(pi) Gamma(nu+3/2))| / L_(nu-1)
pub fn recurrence_residual(nu: f64, x: f64, config: &EvalConfig) -> Result<f64> {
    let cfg = &config.series;
    let lm = l(nu - 1.0, x, cfg)?;
    let lp = l(nu + 1.0, x, cfg)?;
    let l0 = l(nu, x, cfg)?;
    let power = (nu * (0.5 * x).ln() - LN_SQRT_PI - ln_gamma_unchecked(nu + 1.5)).exp();
    Ok((lm - lp - 2.0 * nu / x * l0 - power).abs() / lm.abs())
}

/// Central difference of x^nu L_nu(x) with step 1e-5 x against x^nu L_(nu-1)(x).
pub fn derivative_residual(nu: f64, x: f64, config: &EvalConfig) -> Result<f64> {
    let cfg = &config.series;
    let h = 1e-5 * x;
    let g = |t: f64| -> Result<f64> { Ok(t.powf(nu) * l(nu, t, cfg)?) };
    let fd = (g(x + h)? - g(x - h)?) / (2.0 * h);
    let exact = x.powf(nu) * l(nu - 1.0, x, cfg)?;
    Ok(rel_diff(fd, exact))
}

/// Residual of the three-term integral identity relative to int_0^x t^nu L_(nu+n) dt.
pub fn three_term_residual(nu: f64, n: f64, x: f64, config: &EvalConfig) -> Result<f64> {
    let cfg = &config.series;
    let m = nu + n;
    let d = 2.0 * nu + n + 1.0;
    let lhs = integral_series(&IntegralSpec::new(nu, m, 0.0, x)?, cfg)?;
    let shifted = integral_series(&IntegralSpec::new(nu, m + 2.0, 0.0, x)?, cfg)?;
    let power = ((2.0 * nu + n + 2.0) * x.ln()
        - LN_SQRT_PI
        - (m + 1.0) * LN_2
        - (2.0 * nu + n + 2.0).ln()
        - ln_gamma_unchecked(m + 2.5))
    .exp();
    let rhs = 2.0 * (m + 1.0) / d * x.powf(nu) * l(m + 1.0, x, cfg)?
        - (n + 1.0) / d * shifted
        - (n + 1.0) / d * power;
    Ok(rel_diff(rhs, lhs))
}

fn residual_check(
    name: &str,
    tolerance: f64,
    cases: impl IntoIterator<Item = (String, Result<f64>)>,
) -> Result<CheckResult> {
    let mut worst = 0.0;
    let mut at = String::from("-");
    let mut count = 0;
    for (label, r) in cases {
        let r = r?;
        count += 1;
        if !(r <= worst) {
            worst = r;
            at = label;
        }
    }
    Ok(CheckResult {
        name: name.to_string(),
        passed: worst <= tolerance,
        worst,
        tolerance,
        detail: format!("{count} points, worst at {at}"),
    })
}

fn identity_grid() -> impl Iterator<Item = (f64, f64)> {
    IDENTITY_NU
        .into_iter()
        .flat_map(|nu| IDENTITY_X.into_iter().map(move |x| (nu, x)))
}

fn identity_checks(config: &EvalConfig) -> Result<Vec<CheckResult>> {
    let cfg = &config.series;
    let mut out = Vec::new();

    out.push(residual_check(
        "recurrence",
        1e-10,
        identity_grid()
            .map(|(nu, x)| (format!("nu={nu} x={x}"), recurrence_residual(nu, x, config))),
    )?);
    out.push(residual_check(
        "derivative",
        1e-6,
        identity_grid()
            .map(|(nu, x)| (format!("nu={nu} x={x}"), derivative_residual(nu, x, config))),
    )?);
    out.push(residual_check(
        "three_term_identity",
        1e-9,
        identity_grid().flat_map(|(nu, x)| {
            [0.0, 1.0].into_iter().map(move |n| {
                (
                    format!("nu={nu} n={n} x={x}"),
                    three_term_residual(nu, n, x, config),
                )
            })
        }),
    )?);

    let mut pairs = Vec::new();
    for (nu, x) in identity_grid() {
        pairs.push((
            format!("nu={nu} x={x}"),
            crate::specfun::struve_l_via_1f2(nu, x, cfg)?,
            l(nu, x, cfg)?,
        ));
    }
    out.push(relative_check("representation_1f2", 1e-12, pairs));

    let mut pairs = Vec::new();
    for nu in [-1.0, -0.5, 0.0, 0.5, 2.0, 5.0] {
        for x in [0.5, 1.0, 5.0, 10.0, 50.0] {
            let spec = IntegralSpec::new(nu + 1.0, nu, 0.0, x)?;
            pairs.push((
                format!("nu={nu} x={x}"),
                integral_quadrature(&spec, &config.quadrature, cfg)?,
                integral_closed_form_shifted(nu, x, cfg)?,
            ));
        }
    }
    out.push(relative_check("closed_form", 1e-9, pairs));

    let mut pairs = Vec::new();
    for nu in [-0.25, 0.0, 0.5, 2.5, 5.0] {
        for x in [0.5, 1.0, 5.0, 10.0, 25.0] {
            pairs.push((
                format!("nu={nu} x={x}"),
                integral_2f3_form(nu, x, cfg)?,
                integral_series(&IntegralSpec::new(nu, nu, 0.0, x)?, cfg)?,
            ));
        }
    }
    out.push(relative_check("hypergeometric_2f3_form", 1e-9, pairs));

    let mut pairs = Vec::new();
    for nu in [-0.25, 0.0, 0.5, 2.5, 5.0] {
        for x in [0.5, 1.0, 5.0, 10.0, 25.0] {
            let mut pm = vec![(nu, nu), (nu + 1.0, nu)];
            pm.extend([0.5, 1.0].map(|n| (nu, nu + n)));
            for (p, mu) in pm {
                let spec = IntegralSpec::new(p, mu, 0.0, x)?;
                pairs.push((
                    format!("p={p} mu={mu} x={x}"),
                    integral_quadrature(&spec, &config.quadrature, cfg)?,
                    integral_series(&spec, cfg)?,
                ));
            }
        }
    }
    out.push(relative_check("method_agreement", 1e-9, pairs));
    Ok(out)
}

/// Sweeps over every bound, including both sides of the normalized sandwich.
pub fn inequality_grids() -> Result<Vec<SweepGrid>> {
    use InequalityId::*;
    let mut grids = Vec::new();
    // nu > -(n+2)/2 sampled at four values for each n
    for (n, nus) in [
        (-0.5, vec![-0.7, -0.25, 1.0, 4.0]),
        (0.0, vec![-0.9, -0.25, 1.0, 4.0]),
        (1.0, vec![-1.4, -0.5, 1.0, 4.0]),
    ] {
        grids.push(SweepGrid::new(
            B9Lower,
            nus,
            vec![n],
            vec![0.0, 0.5, 2.0],
            vec![0.5, 5.0, 50.0],
        )?);
    }
    grids.push(SweepGrid::new(
        B10Upper,
        vec![0.5, 1.0, 5.0],
        vec![],
        vec![],
        vec![0.1, 1.0, 10.0, 100.0],
    )?);
    grids.push(SweepGrid::new(
        B11Upper,
        vec![-0.2, 0.0, 2.5],
        vec![0.0, 1.0],
        vec![],
        vec![0.5, 5.0, 25.0],
    )?);
    for id in [B12Upper, B13Upper] {
        grids.push(SweepGrid::new(
            id,
            vec![0.5, 2.0],
            vec![],
            vec![0.0, 0.25, 0.9],
            vec![1.0, 10.0],
        )?);
    }
    grids.push(SweepGrid::new(
        B14Lower,
        vec![-1.0, 0.0, 2.0],
        vec![],
        vec![0.0, 0.5, 2.0],
        vec![0.5, 5.0, 50.0],
    )?);
    grids.push(SweepGrid::new(
        B15Upper,
        vec![-0.25, 0.0, 2.0],
        vec![],
        vec![0.0, 0.5, 0.9],
        vec![1.0, 10.0],
    )?);
    for id in [CorLower, CorUpper] {
        grids.push(SweepGrid::new(
            id,
            vec![-0.25, 0.0, 2.5, 10.0],
            vec![],
            vec![],
            vec![0.5, 5.0, 25.0, 100.0],
        )?);
    }
    Ok(grids)
}

fn inequality_sweeps(config: &EvalConfig) -> Result<Vec<SweepReport>> {
    inequality_grids()?
        .iter()
        .map(|g| sweep(g, SWEEP_MARGIN, config))
        .collect()
}

/// Slack of B12_UPPER and B14_LOWER vanishes at gamma = 0 and is clearly positive at gamma = 0.1.
pub fn equality_iff_undamped(config: &EvalConfig) -> Result<CheckResult> {
    let mut failures = Vec::new();
    let mut total = 0;
    let cases = [
        (InequalityId::B12Upper, vec![0.5, 2.0], vec![1.0, 10.0]),
        (
            InequalityId::B14Lower,
            vec![-1.0, 0.0, 2.0],
            vec![0.5, 5.0, 50.0],
        ),
    ];
    for (id, nus, xs) in cases {
        for &nu in &nus {
            for &x in &xs {
                let at0 = evaluate(id, &BoundPoint::new(nu, 0.0, 0.0, x), config)?;
                let at1 = evaluate(id, &BoundPoint::new(nu, 0.0, 0.1, x), config)?;
                total += 2;
                if !(at0.signed_slack.abs() <= 1e-9 * at0.integral_value) {
                    failures.push(format!(
                        "{id} nu={nu} x={x} gamma=0 rel slack {:e}",
                        at0.relative_error
                    ));
                }
                if !(at1.signed_slack >= 1e-4 * at1.integral_value) {
                    failures.push(format!(
                        "{id} nu={nu} x={x} gamma=0.1 rel slack {:e}",
                        at1.relative_error
                    ));
                }
            }
        }
    }
    Ok(flag_check("equality_iff_gamma_zero", failures, total))
}

fn inequality_checks(config: &EvalConfig) -> Result<Vec<CheckResult>> {
    let cfg = &config.series;
    let mut out = vec![equality_iff_undamped(config)?];

    let mut order_failures = Vec::new();
    let mut consistency = Vec::new();
    let mut middle = Vec::new();
    let mut total = 0;
    for nu in [-0.25, 0.0, 2.5, 5.0, 10.0] {
        for x in [0.5, 1.0, 5.0, 25.0, 100.0] {
            total += 1;
            let t = corollary_triple(nu, x, cfg)?;
            if !(t.lower < t.middle && t.middle < t.upper) {
                order_failures.push(format!("nu={nu} x={x}"));
            }
            let scale = x.powf(-nu);
            let label = format!("nu={nu} x={x}");
            consistency.push((
                label.clone(),
                t.lower,
                scale * bound_b9_lower(nu, 0.0, 0.0, x, cfg)?,
            ));
            consistency.push((
                label.clone(),
                t.upper,
                scale * bound_b11_upper(nu, 0.0, x, cfg)?,
            ));
            let series = integral_series(&IntegralSpec::new(nu, nu, 0.0, x)?, cfg)?;
            middle.push((label, t.middle, scale * series));
        }
    }
    out.push(flag_check("corollary_ordering", order_failures, total));
    out.push(relative_check(
        "corollary_bounds_consistency",
        1e-12,
        consistency,
    ));
    out.push(relative_check(
        "corollary_middle_is_normalized_integral",
        1e-10,
        middle,
    ));
    Ok(out)
}

fn table_shape_checks(lower: &ErrorTable, upper: &ErrorTable) -> Vec<CheckResult> {
    let strictly_decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);

    let mut failures = Vec::new();
    for (i, row) in lower.raw.iter().enumerate() {
        if !strictly_decreasing(row) {
            failures.push(format!("lower row nu={}", lower.nu[i]));
        }
    }
    let rows = lower.raw.len();
    out_of_order_columns(lower, &mut failures);
    out_of_order_columns(upper, &mut failures);
    let mut peak_failures = Vec::new();
    for (i, row) in upper.raw.iter().enumerate() {
        if upper.nu[i] < 0.0 {
            continue;
        }
        let argmax = row
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(j, _)| j)
            .unwrap_or(0);
        if argmax == 0 || argmax + 1 == row.len() {
            peak_failures.push(format!(
                "upper row nu={} peaks at x={}",
                upper.nu[i], upper.x[argmax]
            ));
        }
    }
    vec![
        flag_check("table_monotonicity", failures, rows + 2 * lower.x.len()),
        flag_check("upper_table_interior_maximum", peak_failures, rows),
    ]
}

fn out_of_order_columns(table: &ErrorTable, failures: &mut Vec<String>) {
    for j in 0..table.x.len() {
        let column: Vec<f64> = table.raw.iter().map(|r| r[j]).collect();
        if !column.windows(2).all(|w| w[1] < w[0]) {
            failures.push(format!("{} column x={}", table.kind, table.x[j]));
        }
    }
}

fn tightness_checks(config: &EvalConfig) -> Result<Vec<CheckResult>> {
    use InequalityId::*;
    let cfg = &config.series;
    let mut out = Vec::new();

    let s = tightness_probe(
        B10Upper,
        1.0,
        Direction::AtInfinity,
        &[10.0, 25.0, 50.0, 100.0],
        config,
    )?;
    out.push(probe_check(
        "b10_ratio_tends_to_one_at_infinity",
        &s,
        approaches_one(&s) && s.iter().all(|p| p.ratio > 1.0),
    ));

    let s = tightness_probe(
        CorUpper,
        0.5,
        Direction::AtZero,
        &[1e-1, 1e-2, 1e-3],
        config,
    )?;
    out.push(probe_check(
        "corollary_upper_ratio_tends_to_one_at_zero",
        &s,
        approaches_one(&s),
    ));

    // Both sides behave like c x^(2nu+n+2) near 0, with constants in the ratio
    // (2nu+n+2)/(2nu+2n+3); this is 2/3 at nu = n = 0.
    let s = tightness_probe(B9Lower, 0.0, Direction::AtZero, &[1e-1, 1e-2, 1e-3], config)?;
    let last = s.last().map_or(f64::NAN, |p| p.ratio);
    out.push(CheckResult {
        name: "b9_ratio_at_zero_is_two_thirds".into(),
        passed: (last - 2.0 / 3.0).abs() <= 1e-3,
        worst: (last - 2.0 / 3.0).abs(),
        tolerance: 1e-3,
        detail: format!("ratio {last} at x = 1e-3"),
    });

    let mut pairs = Vec::new();
    for nu in [0.0, 1.0, 5.0] {
        let r = evaluate(CorUpper, &BoundPoint::new(nu, 0.0, 0.0, 1e-3), config)?;
        pairs.push((format!("nu={nu}"), r.bound_value / r.integral_value, 1.0));
    }
    out.push(relative_check("corollary_upper_ratio_at_1e-3", 1e-3, pairs));

    let r = evaluate(B14Lower, &BoundPoint::new(0.0, 0.0, 0.5, 1e-2), config)?;
    let excess = 1.01 * r.bound_value / r.integral_value - 1.0;
    out.push(CheckResult {
        name: "b14_constant_cannot_be_raised".into(),
        passed: excess > 0.0,
        worst: excess,
        tolerance: 0.0,
        detail: format!("1.01 * bound / integral - 1 = {excess:e} at nu=0 gamma=0.5 x=1e-2"),
    });

    let mut failures = Vec::new();
    for nu in [0.5, 1.0] {
        let at = |x: f64| {
            evaluate(CorLower, &BoundPoint::new(nu, 0.0, 0.0, x), config).map(|r| r.relative_error)
        };
        if !(at(100.0)? < at(25.0)?) {
            failures.push(format!("nu={nu}"));
        }
    }
    out.push(flag_check("lower_error_decreases_at_large_x", failures, 2));

    let mut failures = Vec::new();
    for nu in [2.5, 5.0, 7.5, 10.0] {
        let r = evaluate(CorUpper, &BoundPoint::new(nu, 0.0, 0.0, 0.5), config)?;
        if !(r.relative_error < 0.01) {
            failures.push(format!("nu={nu}: {}", r.relative_error));
        }
    }
    out.push(flag_check("upper_error_small_at_x_0.5", failures, 4));

    let mut pairs = Vec::new();
    for gamma in [0.0, 0.5] {
        let x: f64 = 100.0;
        let f = if gamma == 0.0 {
            integral_series(&IntegralSpec::new(0.0, 0.0, 0.0, x)?, cfg)?
        } else {
            integral_quadrature(
                &IntegralSpec::new(0.0, 0.0, gamma, x)?,
                &config.quadrature,
                cfg,
            )?
        };
        let model = ((1.0 - gamma) * x - 0.5 * x.ln()).exp() / ((2.0 * PI).sqrt() * (1.0 - gamma));
        pairs.push((format!("gamma={gamma}"), f / model, 1.0));
    }
    out.push(relative_check("integral_growth_at_x_100", 0.2, pairs));

    let mut pairs = Vec::new();
    for nu in [-1.0, 0.0, 1.0, 5.0] {
        pairs.push((
            format!("nu={nu} x=1e-3"),
            l(nu, 1e-3, cfg)?,
            struve_l_small_x(nu, 1e-3)?,
        ));
    }
    out.push(relative_check("small_x_form_at_1e-3", 1e-2, pairs));
    let mut pairs = Vec::new();
    for nu in [-1.0, 0.0, 1.0, 5.0] {
        pairs.push((
            format!("nu={nu} x=1e-4"),
            l(nu, 1e-4, cfg)?,
            struve_l_small_x(nu, 1e-4)?,
        ));
    }
    out.push(relative_check("small_x_form_at_1e-4", 1e-3, pairs));

    // The first correction is -(4nu^2 - 1)/(8x); at x = 100 it stays within 10%
    // only up to about nu = 4.5.
    let mut pairs = Vec::new();
    for nu in [0.0, 1.0, 2.5, 4.0] {
        pairs.push((
            format!("nu={nu}"),
            l(nu, 100.0, cfg)?,
            struve_l_large_x(100.0)?,
        ));
    }
    out.push(relative_check("large_x_form_at_100", 0.1, pairs));
    Ok(out)
}

fn probe_check(name: &str, samples: &[super::ProbeSample], passed: bool) -> CheckResult {
    let worst = samples.last().map_or(f64::NAN, |p| (p.ratio - 1.0).abs());
    CheckResult {
        name: name.to_string(),
        passed,
        worst,
        tolerance: 0.0,
        detail: samples
            .iter()
            .map(|p| format!("x={} ratio={:.6}", p.x, p.ratio))
            .collect::<Vec<_>>()
            .join(", "),
    }
}
