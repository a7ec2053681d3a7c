use std::f64::consts::{FRAC_2_PI, LN_2, PI};

use super::gamma::ln_gamma_unchecked;
use super::hyper::hyp1f2;
use super::SeriesConfig;
use crate::error::{domain, Error, Result};
use crate::sum::sum_series;

/// Largest argument accepted by [`struve_l`]; L_nu(x) ~ e^x / sqrt(2 pi x)
/// leaves the `f64` range shortly after.
pub const X_MAX: f64 = 690.0;

/// Orders must be strictly greater than this.
pub const MIN_ORDER: f64 = -1.5;

pub(crate) const LN_SQRT_PI: f64 = 0.572_364_942_924_700_1;
/// ln Gamma(3/2) = ln(sqrt(pi) / 2)
pub(crate) const LN_GAMMA_THREE_HALVES: f64 = LN_SQRT_PI - LN_2;

/// Order and argument of L_nu(x), checked on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StruveArgs {
    nu: f64,
    x: f64,
}

impl StruveArgs {
    pub fn new(nu: f64, x: f64) -> Result<Self> {
        if !nu.is_finite() || nu <= MIN_ORDER {
            return Err(domain(format!(
                "Struve order must satisfy nu > -3/2, got nu = {nu}"
            )));
        }
        if !x.is_finite() || x < 0.0 {
            return Err(domain(format!(
                "Struve argument must be finite and x >= 0, got x = {x}"
            )));
        }
        if x > X_MAX {
            return Err(Error::Overflow(format!(
                "L_nu(x) exceeds the double range for x > {X_MAX} (x = {x})"
            )));
        }
        Ok(Self { nu, x })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn x(&self) -> f64 {
        self.x
    }
}

/// Modified Struve function of the first kind,
///
/// L_nu(x) = sum_k (x/2)^(nu + 2k + 1) / (Gamma(k + 3/2) Gamma(k + nu + 3/2)).
///
/// All terms are positive for nu > -3/2, so the sum is free of cancellation; the
/// seed is formed in log space and later terms follow from
/// t_{k+1} = t_k (x^2/4) / ((k + 3/2)(k + nu + 3/2)).
pub fn struve_l(args: StruveArgs, cfg: &SeriesConfig) -> Result<f64> {
    cfg.validate()?;
    let StruveArgs { nu, x } = args;
    if x == 0.0 {
        return if nu > -1.0 {
            Ok(0.0)
        } else if nu == -1.0 {
            // only the k = 0 term survives: 1 / (Gamma(3/2) Gamma(1/2))
            Ok(FRAC_2_PI)
        } else {
            Err(domain(format!(
                "L_nu(x) diverges as x -> 0 for -3/2 < nu < -1 (nu = {nu})"
            )))
        };
    }

    let ln_seed =
        (nu + 1.0) * (0.5 * x).ln() - LN_GAMMA_THREE_HALVES - ln_gamma_unchecked(nu + 1.5);
    let first = ln_seed.exp();
    if first.is_infinite() {
        return Err(Error::Overflow(format!(
            "L_{nu}({x}): leading term overflows"
        )));
    }
    let q = 0.25 * x * x;
    let mut term = first;
    sum_series("struve_l", cfg, first, |k| {
        let j = (k - 1) as f64;
        term *= q / ((j + 1.5) * (j + nu + 1.5));
        term
    })
}

/// `struve_l` without building [`StruveArgs`] at the call site.
pub(crate) fn l(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    struve_l(StruveArgs::new(nu, x)?, cfg)
}

/// Leading small-argument term, 2 (x/2)^(nu+1) / (sqrt(pi) Gamma(nu + 3/2)).
pub fn struve_l_small_x(nu: f64, x: f64) -> Result<f64> {
    let args = StruveArgs::new(nu, x)?;
    if args.x == 0.0 {
        return Err(domain("struve_l_small_x requires x > 0"));
    }
    let ln_v = LN_2 - LN_SQRT_PI - ln_gamma_unchecked(nu + 1.5) + (nu + 1.0) * (0.5 * x).ln();
    Ok(ln_v.exp())
}

/// Order-independent large-argument form e^x / sqrt(2 pi x).
pub fn struve_l_large_x(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(domain(format!(
            "struve_l_large_x requires finite x > 0, got {x}"
        )));
    }
    if x > f64::MAX.ln() {
        return Err(Error::Overflow(format!("e^x overflows for x = {x}")));
    }
    let v = x.exp() / (2.0 * PI * x).sqrt();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!(
            "e^x / sqrt(2 pi x) overflows for x = {x}"
        )))
    }
}

/// L_nu(x) through x^(nu+1) / (sqrt(pi) 2^nu Gamma(nu + 3/2)) * 1F2(1; 3/2, nu + 3/2; x^2/4).
pub fn struve_l_via_1f2(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    let args = StruveArgs::new(nu, x)?;
    if args.x == 0.0 {
        return Err(domain("struve_l_via_1f2 requires x > 0"));
    }
    let ln_pref = (nu + 1.0) * x.ln() - LN_SQRT_PI - nu * LN_2 - ln_gamma_unchecked(nu + 1.5);
    let f = hyp1f2(1.0, 1.5, nu + 1.5, 0.25 * x * x, cfg)?;
    let v = ln_pref.exp() * f;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("L_{nu}({x}) via 1F2 overflows")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    #[test]
    fn zero_argument() {
        assert_eq!(l(0.25, 0.0, &cfg()).unwrap(), 0.0);
        assert_eq!(l(-0.9, 0.0, &cfg()).unwrap(), 0.0);
        assert_eq!(l(-1.0, 0.0, &cfg()).unwrap(), FRAC_2_PI);
        assert!(matches!(l(-1.2, 0.0, &cfg()), Err(Error::Domain(_))));
    }

    #[test]
    fn order_and_argument_guards() {
        assert!(matches!(StruveArgs::new(-1.5, 1.0), Err(Error::Domain(_))));
        assert!(matches!(StruveArgs::new(-2.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(StruveArgs::new(0.0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(
            StruveArgs::new(0.0, f64::NAN),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            StruveArgs::new(0.0, 700.0),
            Err(Error::Overflow(_))
        ));
        assert!(StruveArgs::new(0.0, X_MAX).is_ok());
    }

    #[test]
    fn small_x_form_at_one() {
        // 2 / (sqrt(pi) Gamma(3/2)) * 1/2 = 2 / pi
        let v = struve_l_small_x(0.0, 1.0).unwrap();
        assert!((v - FRAC_2_PI).abs() < 1e-15);
    }

    #[test]
    fn large_x_form_at_one() {
        let v = struve_l_large_x(1.0).unwrap();
        assert!((v - 1.084_437_551_419_227_5).abs() < 1e-15);
        assert!(matches!(struve_l_large_x(720.0), Err(Error::Overflow(_))));
        assert!(struve_l_large_x(0.0).is_err());
    }

    #[test]
    fn series_holds_at_x_max() {
        let v = l(0.0, X_MAX, &cfg()).unwrap();
        let ratio = v / struve_l_large_x(X_MAX).unwrap();
        assert!((ratio - 1.0).abs() < 1e-2);
    }

    #[test]
    fn rejects_bad_config() {
        let bad = SeriesConfig {
            rel_tol: 0.0,
            ..cfg()
        };
        assert!(matches!(l(0.0, 1.0, &bad), Err(Error::Config(_))));
    }
}
