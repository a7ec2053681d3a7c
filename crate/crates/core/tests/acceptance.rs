//! Acceptance criteria. Run with `cargo test -p struve-ineq --test acceptance`;
//! prints one PASS/FAIL line per criterion and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use struve_ineq::bounds::{evaluate, BoundPoint, InequalityId};
use struve_ineq::integrate::{
    integral_2f3_form, integral_quadrature, integral_series, IntegralSpec,
};
use struve_ineq::specfun::{struve_l, StruveArgs};
use struve_ineq::verify::{
    compare_with_reference, derivative_residual, recurrence_residual, regenerate_table, sweep,
    three_term_residual, ErrorTable, SweepGrid, TableKind, TABLE_CELL_TOLERANCE,
};
use struve_ineq::{EvalConfig, Result};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        detail: detail.into(),
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

type Criterion = fn(&EvalConfig) -> Result<Outcome>;

const TABLE_TIME_LIMIT: Duration = Duration::from_secs(10);

fn table_regeneration(kind: TableKind, config: &EvalConfig) -> Result<Outcome> {
    let start = Instant::now();
    let table = regenerate_table(kind, config)?;
    let elapsed = start.elapsed();
    let cmp = compare_with_reference(&table, TABLE_CELL_TOLERANCE)?;
    let mut detail = format!(
        "{}/{} cells within 1e-4 in {:.2?}",
        cmp.cells - cmp.mismatches.len(),
        cmp.cells,
        elapsed
    );
    for m in &cmp.mismatches {
        detail += &format!(
            "; nu={} x={}: computed {:.4} (raw {:.6}), published {:.4}",
            m.nu,
            m.x,
            m.computed,
            table.raw[row_of(&table, m.nu)][col_of(&table, m.x)],
            m.reference
        );
    }
    outcome(cmp.passed() && elapsed < TABLE_TIME_LIMIT, detail)
}

fn row_of(t: &ErrorTable, nu: f64) -> usize {
    t.nu.iter().position(|&v| v == nu).unwrap()
}

fn col_of(t: &ErrorTable, x: f64) -> usize {
    t.x.iter().position(|&v| v == x).unwrap()
}

fn criterion_1(c: &EvalConfig) -> Result<Outcome> {
    table_regeneration(TableKind::Lower, c)
}

fn criterion_2(c: &EvalConfig) -> Result<Outcome> {
    table_regeneration(TableKind::Upper, c)
}

fn criterion_3(c: &EvalConfig) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for nu in [-1.0, -0.5, 0.0, 0.5, 2.0, 5.0] {
        for x in [0.5, 1.0, 5.0, 10.0, 50.0] {
            let q = integral_quadrature(
                &IntegralSpec::new(nu + 1.0, nu, 0.0, x)?,
                &c.quadrature,
                &c.series,
            )?;
            let closed = x.powf(nu + 1.0) * struve_l(StruveArgs::new(nu + 1.0, x)?, &c.series)?;
            worst = worst.max(rel(q, closed));
        }
    }
    outcome(
        worst <= 1e-9,
        format!("max relative difference {worst:.2e} (limit 1e-9)"),
    )
}

fn criterion_4(c: &EvalConfig) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for nu in [-0.25, 0.0, 0.5, 2.5, 5.0] {
        for x in [0.5, 1.0, 5.0, 10.0, 25.0] {
            let hyper = integral_2f3_form(nu, x, &c.series)?;
            let series = integral_series(&IntegralSpec::new(nu, nu, 0.0, x)?, &c.series)?;
            worst = worst.max(rel(hyper, series));
        }
    }
    outcome(
        worst <= 1e-9,
        format!("max relative difference {worst:.2e} (limit 1e-9)"),
    )
}

fn criterion_5(c: &EvalConfig) -> Result<Outcome> {
    use InequalityId::*;
    let mut grids = Vec::new();
    // four samples of nu > -(n+2)/2 for each n
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

    let (mut evaluated, mut skipped, mut violations) = (0, 0, 0);
    for g in &grids {
        let r = sweep(g, 1e-9, c)?;
        evaluated += r.evaluated;
        skipped += r.skipped;
        violations += r.violations.len();
    }
    outcome(
        violations == 0 && skipped == 0,
        format!("{evaluated} points evaluated, {skipped} skipped, {violations} violations (margin 1e-9)"),
    )
}

fn criterion_6(c: &EvalConfig) -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut cases = 0;
    for (id, nus, xs) in [
        (InequalityId::B12Upper, vec![0.5, 2.0], vec![1.0, 10.0]),
        (
            InequalityId::B14Lower,
            vec![-1.0, 0.0, 2.0],
            vec![0.5, 5.0, 50.0],
        ),
    ] {
        for &nu in &nus {
            for &x in &xs {
                cases += 1;
                let undamped = evaluate(id, &BoundPoint::new(nu, 0.0, 0.0, x), c)?;
                let damped = evaluate(id, &BoundPoint::new(nu, 0.0, 0.1, x), c)?;
                if undamped.signed_slack.abs() > 1e-9 * undamped.integral_value
                    || undamped.signed_slack.is_nan()
                {
                    failures.push(format!("{id} nu={nu} x={x} gamma=0"));
                }
                if damped.signed_slack < 1e-4 * damped.integral_value
                    || damped.signed_slack.is_nan()
                {
                    failures.push(format!("{id} nu={nu} x={x} gamma=0.1"));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{cases} (nu, x) pairs; failures: {failures:?}"),
    )
}

fn criterion_7(c: &EvalConfig) -> Result<Outcome> {
    // the identities involve L_(nu-1) or need nu > -(n+1)/2, so nu stays above -1/2
    let nus = [-0.4, 0.0, 1.5, 4.0, 10.0];
    let xs = [0.1, 1.0, 7.5, 30.0, 100.0];
    let (mut rec, mut der, mut three): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for nu in nus {
        for x in xs {
            rec = rec.max(recurrence_residual(nu, x, c)?);
            der = der.max(derivative_residual(nu, x, c)?);
            for n in [0.0, 1.0] {
                three = three.max(three_term_residual(nu, n, x, c)?);
            }
        }
    }
    outcome(
        rec <= 1e-10 && der <= 1e-6 && three <= 1e-9,
        format!("25 points: recurrence {rec:.2e} (1e-10), derivative {der:.2e} (1e-6), three-term {three:.2e} (1e-9)"),
    )
}

fn criterion_8(c: &EvalConfig) -> Result<Outcome> {
    let lower = regenerate_table(TableKind::Lower, c)?;
    let upper = regenerate_table(TableKind::Upper, c)?;
    let decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    let mut failures = Vec::new();
    for (nu, row) in lower.nu.iter().zip(&lower.raw) {
        if !decreasing(row) {
            failures.push(format!("lower row nu={nu} not decreasing"));
        }
    }
    for (nu, row) in upper.nu.iter().zip(&upper.raw) {
        if *nu < 0.0 {
            continue;
        }
        let peak = row
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(j, _)| j)
            .unwrap();
        if peak == 0 || peak + 1 == row.len() {
            failures.push(format!("upper row nu={nu} peaks at the edge"));
        }
    }
    for t in [&lower, &upper] {
        for (j, x) in t.x.iter().enumerate() {
            let col: Vec<f64> = t.raw.iter().map(|r| r[j]).collect();
            if !decreasing(&col) {
                failures.push(format!("{} column x={x} not decreasing in nu", t.kind));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("rows, peaks and columns checked; failures: {failures:?}"),
    )
}

fn criterion_9(c: &EvalConfig) -> Result<Outcome> {
    let mut ratios = Vec::new();
    for nu in [0.0, 1.0, 5.0] {
        let r = evaluate(
            InequalityId::CorUpper,
            &BoundPoint::new(nu, 0.0, 0.0, 1e-3),
            c,
        )?;
        ratios.push(r.bound_value / r.integral_value);
    }
    let ok = ratios.iter().all(|r| (0.999..=1.001).contains(r));
    outcome(ok, format!("U/F at x=1e-3 for nu = 0, 1, 5: {ratios:.9?}"))
}

fn criterion_10(c: &EvalConfig) -> Result<Outcome> {
    let r = evaluate(
        InequalityId::B14Lower,
        &BoundPoint::new(0.0, 0.0, 0.5, 1e-2),
        c,
    )?;
    let scaled = 1.01 * r.bound_value;
    outcome(
        scaled > r.integral_value,
        format!(
            "1.01 * bound = {scaled:.12e}, integral = {:.12e}",
            r.integral_value
        ),
    )
}

fn main() -> ExitCode {
    let config = EvalConfig::default();
    let criteria: [(&str, Criterion); 10] = [
        ("lower-bound relative-error table", criterion_1),
        ("upper-bound relative-error table", criterion_2),
        ("closed form of int t^(nu+1) L_nu", criterion_3),
        ("2F3 form of int t^nu L_nu", criterion_4),
        ("inequality sweep", criterion_5),
        ("equality iff gamma = 0", criterion_6),
        ("structural identities", criterion_7),
        ("table monotonicity", criterion_8),
        ("corollary upper bound at x -> 0", criterion_9),
        (
            "best constant witness for the damped lower bound",
            criterion_10,
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (passed, detail) = match check(&config) {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {name}: {detail}",
            if passed { "PASS" } else { "FAIL" },
            i + 1
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
