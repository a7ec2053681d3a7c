use proptest::prelude::*;
use struve_ineq::bounds::{evaluate, BoundPoint, InequalityId};
use struve_ineq::integrate::{integral_quadrature, integral_series, IntegralSpec};
use struve_ineq::specfun::{struve_l, struve_l_via_1f2, StruveArgs};
use struve_ineq::verify::{recurrence_residual, regenerate_table, TableKind};
use struve_ineq::{EvalConfig, QuadratureConfig, SeriesConfig};

const MARGIN: f64 = 1e-9;

fn l(nu: f64, x: f64) -> f64 {
    struve_l(StruveArgs::new(nu, x).unwrap(), &SeriesConfig::default()).unwrap()
}

fn holds(id: InequalityId, nu: f64, n: f64, gamma: f64, x: f64) -> Result<(), TestCaseError> {
    let r = evaluate(
        id,
        &BoundPoint::new(nu, n, gamma, x),
        &EvalConfig::default(),
    )
    .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(
        r.holds_with_margin(MARGIN),
        "{id} at nu={nu} n={n} gamma={gamma} x={x}: relative slack {}",
        r.relative_error
    );
    Ok(())
}

proptest! {
    #[test]
    fn struve_l_is_positive(nu in -1.49f64..10.0, x in 1e-3f64..200.0) {
        prop_assert!(l(nu, x) > 0.0);
    }

    #[test]
    fn order_monotonicity(nu in 0.5f64..10.0, x in 1e-2f64..100.0) {
        prop_assert!(l(nu, x) < l(nu - 1.0, x));
    }

    #[test]
    fn hypergeometric_representation(nu in -1.45f64..10.0, x in 1e-3f64..100.0) {
        let via = struve_l_via_1f2(nu, x, &SeriesConfig::default()).unwrap();
        let direct = l(nu, x);
        prop_assert!((via - direct).abs() <= 1e-12 * direct, "{via} vs {direct}");
    }

    #[test]
    fn recurrence(nu in -0.45f64..10.0, x in 1e-2f64..100.0) {
        let r = recurrence_residual(nu, x, &EvalConfig::default()).unwrap();
        prop_assert!(r <= 1e-10, "residual {r}");
    }

    #[test]
    fn integral_increases_with_x(p in -0.9f64..3.0, mu in -0.9f64..3.0, gamma in 0.0f64..2.0, x in 0.1f64..30.0) {
        let q = QuadratureConfig::default();
        let c = SeriesConfig::default();
        let f = |x| integral_quadrature(&IntegralSpec::new(p, mu, gamma, x).unwrap(), &q, &c).unwrap();
        prop_assert!(f(x) < f(x * 1.1));
    }

    #[test]
    fn methods_agree_undamped(p in -0.9f64..3.0, mu in -0.9f64..3.0, x in 0.1f64..50.0) {
        let spec = IntegralSpec::new(p, mu, 0.0, x).unwrap();
        let c = SeriesConfig::default();
        let s = integral_series(&spec, &c).unwrap();
        let q = integral_quadrature(&spec, &QuadratureConfig::default(), &c).unwrap();
        prop_assert!((s - q).abs() <= 1e-9 * s, "{s} vs {q}");
    }

    #[test]
    fn b9_lower(n in -0.9f64..2.0, lift in 0.05f64..5.0, gamma in 0.0f64..3.0, x in 0.05f64..60.0) {
        holds(InequalityId::B9Lower, -(n + 2.0) / 2.0 + lift, n, gamma, x)?;
    }

    #[test]
    fn b10_upper(nu in 0.5f64..10.0, x in 0.05f64..100.0) {
        holds(InequalityId::B10Upper, nu, 0.0, 0.0, x)?;
    }

    #[test]
    fn b11_upper(n in -0.9f64..2.0, lift in 0.05f64..5.0, x in 0.05f64..60.0) {
        holds(InequalityId::B11Upper, -(n + 1.0) / 2.0 + lift, n, 0.0, x)?;
    }

    #[test]
    fn b12_and_b13_upper(nu in 0.5f64..6.0, gamma in 0.0f64..0.95, x in 0.05f64..40.0) {
        holds(InequalityId::B12Upper, nu, 0.0, gamma, x)?;
        holds(InequalityId::B13Upper, nu, 0.0, gamma, x)?;
    }

    #[test]
    fn b14_lower(nu in -1.45f64..6.0, gamma in 0.0f64..3.0, x in 0.05f64..60.0) {
        holds(InequalityId::B14Lower, nu, 0.0, gamma, x)?;
    }

    #[test]
    fn b15_upper(nu in -0.45f64..6.0, gamma in 0.0f64..0.95, x in 0.05f64..40.0) {
        holds(InequalityId::B15Upper, nu, 0.0, gamma, x)?;
    }

    #[test]
    fn corollary(nu in -0.45f64..10.0, x in 0.05f64..100.0) {
        holds(InequalityId::CorLower, nu, 0.0, 0.0, x)?;
        holds(InequalityId::CorUpper, nu, 0.0, 0.0, x)?;
    }
}

#[test]
fn tables_are_bit_stable() {
    let c = EvalConfig::default();
    for kind in [TableKind::Lower, TableKind::Upper] {
        let a = regenerate_table(kind, &c).unwrap();
        let b = regenerate_table(kind, &c).unwrap();
        let bits = |t: &struve_ineq::verify::ErrorTable| -> Vec<u64> {
            t.raw.iter().flatten().map(|v| v.to_bits()).collect()
        };
        assert_eq!(bits(&a), bits(&b));
        assert!(a.entries.iter().flatten().all(|&v| (0.0..1.0).contains(&v)));
    }
}
