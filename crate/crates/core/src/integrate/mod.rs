//! Weighted integrals F(p, mu, gamma, x) = int_0^x e^(-gamma t) t^p L_mu(t) dt.
//!
//! Two independent routes are provided. [`integral_series`] integrates the
//! Struve series term by term and only applies to gamma = 0. [`integral_quadrature`]
//! handles any gamma >= 0: the piece [0, delta] next to the (possibly singular)
//! endpoint is integrated analytically from the damped series, and [delta, x]
//! goes to adaptive Gauss-Kronrod quadrature.

mod quadrature;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfun::{
    hyp2f3, l, ln_gamma_unchecked, SeriesConfig, LN_GAMMA_THREE_HALVES, LN_SQRT_PI, MIN_ORDER,
    X_MAX,
};
use crate::sum::{sum_series, try_sum_series};
use quadrature::{adaptive_gk15, Tolerance};

/// The integral int_0^x e^(-gamma t) t^p L_mu(t) dt, checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralSpec {
    pub p: f64,
    pub mu: f64,
    pub gamma: f64,
    pub x: f64,
}

impl IntegralSpec {
    pub fn new(p: f64, mu: f64, gamma: f64, x: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("mu", mu), ("gamma", gamma), ("x", x)] {
            if !v.is_finite() {
                return Err(domain(format!("{name} must be finite, got {v}")));
            }
        }
        if mu <= MIN_ORDER {
            return Err(domain(format!(
                "order must satisfy mu > -3/2, got mu = {mu}"
            )));
        }
        if gamma < 0.0 {
            return Err(domain(format!(
                "damping must satisfy gamma >= 0, got {gamma}"
            )));
        }
        if x <= 0.0 {
            return Err(domain(format!("upper limit must satisfy x > 0, got {x}")));
        }
        if x > X_MAX {
            return Err(Error::Overflow(format!(
                "upper limit x = {x} exceeds {X_MAX}"
            )));
        }
        if p + mu <= -2.0 {
            return Err(domain(format!(
                "integral diverges at 0 unless p + mu > -2 (p + mu = {})",
                p + mu
            )));
        }
        Ok(Self { p, mu, gamma, x })
    }
}

/// Quadrature tolerances and the analytic/numeric split point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Width of the analytically integrated piece [0, delta]; `None` means min(x, 1)/8.
    pub series_split: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_subdivisions: 2000,
            series_split: None,
        }
    }
}

// keeps gamma * delta small enough that e^(-gamma delta) cannot underflow the head
const MAX_DAMPING_IN_HEAD: f64 = 8.0;

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::Config(format!(
                "quadrature rel_tol must be a positive finite number, got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::Config(format!(
                "quadrature abs_tol must be finite and >= 0, got {}",
                self.abs_tol
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Config("max_subdivisions must be at least 1".into()));
        }
        Ok(())
    }

    /// Split point for a given integral. A user-supplied split must lie in (0, x);
    /// under strong damping the split is pulled in to 8/gamma.
    pub fn split_for(&self, spec: &IntegralSpec) -> Result<f64> {
        let delta = match self.series_split {
            Some(d) => {
                if !(d > 0.0 && d < spec.x) {
                    return Err(Error::Config(format!(
                        "series_split must lie in (0, x) = (0, {}), got {d}",
                        spec.x
                    )));
                }
                d
            }
            None => spec.x.min(1.0) / 8.0,
        };
        if spec.gamma * delta > MAX_DAMPING_IN_HEAD {
            Ok(MAX_DAMPING_IN_HEAD / spec.gamma)
        } else {
            Ok(delta)
        }
    }
}

/// Which evaluation route to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Quadrature,
    /// Series when gamma = 0, quadrature otherwise.
    Auto,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Series => "series",
            Method::Quadrature => "quadrature",
            Method::Auto => "auto",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "series" => Ok(Method::Series),
            "quadrature" => Ok(Method::Quadrature),
            "auto" => Ok(Method::Auto),
            other => Err(domain(format!("unknown integration method '{other}'"))),
        }
    }
}

/// Term-by-term integral of the Struve series (gamma = 0 only):
///
/// sum_k (1/2)^(mu+2k+1) x^(p+mu+2k+2) / ((p+mu+2k+2) Gamma(k+3/2) Gamma(k+mu+3/2)).
pub fn integral_series(spec: &IntegralSpec, cfg: &SeriesConfig) -> Result<f64> {
    cfg.validate()?;
    if spec.gamma != 0.0 {
        return Err(domain(format!(
            "integral_series needs gamma = 0, got gamma = {}",
            spec.gamma
        )));
    }
    let IntegralSpec { p, mu, x, .. } = *spec;
    let ln_seed = (p + 1.0) * x.ln() + (mu + 1.0) * (0.5 * x).ln()
        - LN_GAMMA_THREE_HALVES
        - ln_gamma_unchecked(mu + 1.5);
    let q = 0.25 * x * x;
    let mut struve_term = ln_seed.exp();
    let exponent = |k: f64| p + mu + 2.0 * k + 2.0;
    sum_series("integral_series", cfg, struve_term / exponent(0.0), |k| {
        let j = (k - 1) as f64;
        struve_term *= q / ((j + 1.5) * (j + mu + 1.5));
        struve_term / exponent(k as f64)
    })
}

/// e^(-z) sum_j z^j / (a (a+1) ... (a+j)), i.e. the lower incomplete gamma
/// function scaled as gamma(a, z) z^(-a). With z = gamma * delta,
/// int_0^delta e^(-gamma t) t^(a-1) dt = delta^a * damped_moment(a, z).
fn damped_moment(a: f64, z: f64, cfg: &SeriesConfig) -> Result<f64> {
    if z == 0.0 {
        return Ok(1.0 / a);
    }
    let first = (-z).exp() / a;
    let mut term = first;
    sum_series("incomplete gamma", cfg, first, |j| {
        term *= z / (a + j as f64);
        term
    })
}

/// Analytic integral over [0, delta] of the damped Struve series.
fn damped_head(spec: &IntegralSpec, delta: f64, cfg: &SeriesConfig) -> Result<f64> {
    let IntegralSpec { p, mu, gamma, .. } = *spec;
    let z = gamma * delta;
    let ln_seed = (p + 1.0) * delta.ln() + (mu + 1.0) * (0.5 * delta).ln()
        - LN_GAMMA_THREE_HALVES
        - ln_gamma_unchecked(mu + 1.5);
    let q = 0.25 * delta * delta;
    let mut struve_term = ln_seed.exp();
    let exponent = |k: f64| p + mu + 2.0 * k + 2.0;
    let first = struve_term * damped_moment(exponent(0.0), z, cfg)?;
    try_sum_series("damped series head", cfg, first, |k| {
        let j = (k - 1) as f64;
        struve_term *= q / ((j + 1.5) * (j + mu + 1.5));
        Ok(struve_term * damped_moment(exponent(k as f64), z, cfg)?)
    })
}

/// Integral for any gamma >= 0: analytic head on [0, delta], adaptive
/// Gauss-Kronrod on [delta, x].
pub fn integral_quadrature(
    spec: &IntegralSpec,
    qcfg: &QuadratureConfig,
    cfg: &SeriesConfig,
) -> Result<f64> {
    cfg.validate()?;
    qcfg.validate()?;
    let delta = qcfg.split_for(spec)?;
    let head = damped_head(spec, delta, cfg)?;
    let IntegralSpec { p, mu, gamma, x } = *spec;
    let integrand = |t: f64| -> Result<f64> {
        let weight = (p * t.ln() - gamma * t).exp();
        Ok(weight * l(mu, t, cfg)?)
    };
    // the tail carries almost all of the mass for large x, so it gets the full
    // relative target; the head is exact to series precision
    let tail = adaptive_gk15(
        integrand,
        delta,
        x,
        Tolerance {
            rel: qcfg.rel_tol,
            abs: qcfg.abs_tol,
            max_subdivisions: qcfg.max_subdivisions,
        },
    )?;
    let v = head + tail;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("integral overflows for {spec:?}")))
    }
}

/// Evaluates the integral with the requested method and reports the one used.
pub fn integral(
    spec: &IntegralSpec,
    method: Method,
    qcfg: &QuadratureConfig,
    cfg: &SeriesConfig,
) -> Result<(f64, Method)> {
    let method = match method {
        Method::Auto if spec.gamma == 0.0 => Method::Series,
        Method::Auto => Method::Quadrature,
        m => m,
    };
    let v = match method {
        Method::Series => integral_series(spec, cfg)?,
        _ => integral_quadrature(spec, qcfg, cfg)?,
    };
    Ok((v, method))
}

/// int_0^x t^(nu+1) L_nu(t) dt = x^(nu+1) L_(nu+1)(x).
pub fn integral_closed_form_shifted(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    if !nu.is_finite() || nu <= MIN_ORDER {
        return Err(domain(format!("requires nu > -3/2, got nu = {nu}")));
    }
    if !(x > 0.0) {
        return Err(domain(format!("requires x > 0, got x = {x}")));
    }
    let v = x.powf(nu + 1.0) * l(nu + 1.0, x, cfg)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!(
            "x^(nu+1) L_(nu+1)(x) overflows at nu = {nu}, x = {x}"
        )))
    }
}

/// int_0^x t^nu L_nu(t) dt through the 2F3 representation
/// x^(2nu+2) / (sqrt(pi) 2^(nu+1) (nu+1) Gamma(nu+3/2)) * 2F3(1, nu+1; 3/2, nu+3/2, nu+2; x^2/4).
pub fn integral_2f3_form(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    if !nu.is_finite() || nu <= -1.0 {
        return Err(domain(format!(
            "the 2F3 form requires nu > -1, got nu = {nu}"
        )));
    }
    if !(x > 0.0 && x <= X_MAX) {
        return Err(domain(format!("requires 0 < x <= {X_MAX}, got x = {x}")));
    }
    let ln_pref = (2.0 * nu + 2.0) * x.ln()
        - LN_SQRT_PI
        - (nu + 1.0) * std::f64::consts::LN_2
        - (nu + 1.0).ln()
        - ln_gamma_unchecked(nu + 1.5);
    let f = hyp2f3(1.0, nu + 1.0, 1.5, nu + 1.5, nu + 2.0, 0.25 * x * x, cfg)?;
    let v = ln_pref.exp() * f;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!(
            "2F3 form overflows at nu = {nu}, x = {x}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn spec_guards() {
        assert!(matches!(
            IntegralSpec::new(-1.0, -1.2, 0.0, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            IntegralSpec::new(0.0, -1.6, 0.0, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            IntegralSpec::new(0.0, 0.0, -0.1, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            IntegralSpec::new(0.0, 0.0, 0.0, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            IntegralSpec::new(0.0, 0.0, 0.0, 691.0),
            Err(Error::Overflow(_))
        ));
        assert!(IntegralSpec::new(-0.5, -1.4, 0.0, 1.0).is_ok());
    }

    #[test]
    fn series_rejects_damping() {
        let spec = IntegralSpec::new(0.0, 0.0, 0.5, 1.0).unwrap();
        assert!(matches!(
            integral_series(&spec, &SeriesConfig::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn damped_moment_matches_direct_quadrature() {
        // int_0^1 e^(-3t) t^(0.5) dt, compared against plain GK on a smooth substitute t = u^2
        let cfg = SeriesConfig::default();
        let analytic = damped_moment(1.5, 3.0, &cfg).unwrap();
        let tol = Tolerance {
            rel: 1e-14,
            abs: 0.0,
            max_subdivisions: 100,
        };
        let numeric = adaptive_gk15(
            |u: f64| Ok(2.0 * u * u * (-3.0 * u * u).exp()),
            0.0,
            1.0,
            tol,
        )
        .unwrap();
        assert!(rel(analytic, numeric) < 1e-13);
    }

    #[test]
    fn split_rules() {
        let q = QuadratureConfig::default();
        let spec = IntegralSpec::new(0.0, 0.0, 0.0, 5.0).unwrap();
        assert_eq!(q.split_for(&spec).unwrap(), 0.125);
        let spec = IntegralSpec::new(0.0, 0.0, 0.0, 0.4).unwrap();
        assert_eq!(q.split_for(&spec).unwrap(), 0.05);
        let spec = IntegralSpec::new(0.0, 0.0, 400.0, 5.0).unwrap();
        assert_eq!(q.split_for(&spec).unwrap(), 0.02);
        let bad = QuadratureConfig {
            series_split: Some(6.0),
            ..q
        };
        let spec = IntegralSpec::new(0.0, 0.0, 0.0, 5.0).unwrap();
        assert!(matches!(bad.split_for(&spec), Err(Error::Config(_))));
    }

    #[test]
    fn head_equals_series_when_undamped() {
        let cfg = SeriesConfig::default();
        let spec = IntegralSpec::new(-0.7, -0.2, 0.0, 0.125).unwrap();
        let head = damped_head(&spec, 0.125, &cfg).unwrap();
        assert!(rel(head, integral_series(&spec, &cfg).unwrap()) < 1e-14);
    }

    #[test]
    fn auto_method_selection() {
        let (q, s) = (QuadratureConfig::default(), SeriesConfig::default());
        let spec = IntegralSpec::new(0.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(
            integral(&spec, Method::Auto, &q, &s).unwrap().1,
            Method::Series
        );
        let spec = IntegralSpec::new(0.0, 0.0, 0.3, 1.0).unwrap();
        assert_eq!(
            integral(&spec, Method::Auto, &q, &s).unwrap().1,
            Method::Quadrature
        );
    }
}
