//! Compensated accumulation and the shared stopping rule for power series.

use crate::error::{Error, Result};
use crate::specfun::SeriesConfig;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Sums `first + next(1) + next(2) + ...` until the terms have passed their peak
/// and `cfg.trailing_small` consecutive terms fall below `cfg.rel_tol` relative
/// to the running total.
///
/// `next(k)` returns term `k` and is called with strictly increasing `k`, so it
/// may carry recurrence state.
pub(crate) fn sum_series(
    what: &'static str,
    cfg: &SeriesConfig,
    first: f64,
    mut next: impl FnMut(usize) -> f64,
) -> Result<f64> {
    try_sum_series(what, cfg, first, |k| Ok(next(k)))
}

/// [`sum_series`] for term generators that can fail.
pub(crate) fn try_sum_series(
    what: &'static str,
    cfg: &SeriesConfig,
    first: f64,
    mut next: impl FnMut(usize) -> Result<f64>,
) -> Result<f64> {
    if !first.is_finite() {
        return Err(Error::Overflow(format!(
            "{what}: leading term is not finite"
        )));
    }
    let mut acc = CompensatedSum::new();
    acc.add(first);
    let mut prev = first.abs();
    let mut past_peak = false;
    let mut small_run = 0usize;

    for k in 1..cfg.max_terms {
        let term = next(k)?;
        if !term.is_finite() {
            return Err(Error::Overflow(format!("{what}: term {k} is not finite")));
        }
        acc.add(term);
        let mag = term.abs();
        if mag < prev || mag == 0.0 {
            past_peak = true;
        }
        prev = mag;

        let total = acc.total();
        if !total.is_finite() {
            return Err(Error::Overflow(format!("{what}: partial sum overflowed")));
        }
        if past_peak && mag <= cfg.rel_tol * total.abs() {
            small_run += 1;
            if small_run >= cfg.trailing_small {
                return Ok(total);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence {
        what,
        max_terms: cfg.max_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_keeps_small_addends() {
        let mut acc = CompensatedSum::new();
        acc.add(1.0);
        for _ in 0..10_000 {
            acc.add(1e-16);
        }
        assert!((acc.total() - (1.0 + 1e-12)).abs() < 1e-20);
    }

    #[test]
    fn geometric_series() {
        let cfg = SeriesConfig::default();
        let mut t = 1.0;
        let s = sum_series("geometric", &cfg, 1.0, |_| {
            t *= 0.5;
            t
        })
        .unwrap();
        assert!((s - 2.0).abs() < 1e-15);
    }

    #[test]
    fn does_not_stop_before_the_peak() {
        // e^30: terms grow until k = 30, the first ones are tiny relative to nothing yet
        let cfg = SeriesConfig::default();
        let mut t = 1.0;
        let s = sum_series("exp", &cfg, 1.0, |k| {
            t *= 30.0 / k as f64;
            t
        })
        .unwrap();
        assert!((s / 30f64.exp() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn reports_non_convergence() {
        let cfg = SeriesConfig {
            max_terms: 5,
            ..SeriesConfig::default()
        };
        let err = sum_series("harmonic", &cfg, 1.0, |k| 1.0 / (k as f64 + 1.0)).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { max_terms: 5, .. }));
    }
}
