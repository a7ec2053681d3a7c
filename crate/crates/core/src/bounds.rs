//! Lower and upper bounds for the weighted Struve integrals, and the
//! two-sided bound for the 2F3 expression F_nu(x) = x^(-nu) int_0^x t^nu L_nu(t) dt.
//!
//! Every bound is tied to an [`InequalityId`] whose hypothesis set is enforced
//! before anything is evaluated; out-of-hypothesis points are errors, never
//! silently evaluated.

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::integrate::{integral_2f3_form, integral_quadrature, integral_series, IntegralSpec};
use crate::specfun::{l, ln_gamma_unchecked, SeriesConfig, LN_SQRT_PI, X_MAX};
use crate::EvalConfig;

/// Which inequality a bound belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InequalityId {
    /// int e^(-gamma t) t^nu L_(nu+n) > e^(-gamma x) x^nu L_(nu+n+1)(x)
    #[serde(rename = "B9_LOWER")]
    B9Lower,
    /// int t^nu L_nu < x^nu L_nu(x)
    #[serde(rename = "B10_UPPER")]
    B10Upper,
    /// int t^nu L_(nu+n) < three-term combination of L_(nu+n+1), L_(nu+n+3) and a power
    #[serde(rename = "B11_UPPER")]
    B11Upper,
    /// int e^(-gamma t) t^nu L_nu <= e^(-gamma x)/(1-gamma) int t^nu L_nu
    #[serde(rename = "B12_UPPER")]
    B12Upper,
    /// damped version of `B11Upper` with n = 0
    #[serde(rename = "B13_UPPER")]
    B13Upper,
    /// int e^(-gamma t) t^(nu+1) L_nu >= e^(-gamma x) x^(nu+1) L_(nu+1)(x)
    #[serde(rename = "B14_LOWER")]
    B14Lower,
    /// int e^(-gamma t) t^(nu+1) L_nu < e^(-gamma x) x^(nu+1) L_(nu+1)(x) / (1-gamma)
    #[serde(rename = "B15_UPPER")]
    B15Upper,
    /// L_(nu+1)(x) < F_nu(x)
    #[serde(rename = "COR_LOWER")]
    CorLower,
    /// F_nu(x) < U_nu(x)
    #[serde(rename = "COR_UPPER")]
    CorUpper,
}

/// The point at which a bound is evaluated. Parameters an inequality does not
/// use must be zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundPoint {
    pub nu: f64,
    pub n: f64,
    pub gamma: f64,
    pub x: f64,
}

impl BoundPoint {
    pub fn new(nu: f64, n: f64, gamma: f64, x: f64) -> Self {
        Self { nu, n, gamma, x }
    }
}

/// One hypothesis of an inequality.
#[derive(Clone, Copy)]
pub struct Hypothesis {
    pub condition: &'static str,
    holds: fn(&BoundPoint) -> bool,
}

impl Hypothesis {
    pub fn holds(&self, p: &BoundPoint) -> bool {
        (self.holds)(p)
    }
}

impl fmt::Debug for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.condition)
    }
}

const fn hyp(condition: &'static str, holds: fn(&BoundPoint) -> bool) -> Hypothesis {
    Hypothesis { condition, holds }
}

const N_GT_MINUS_ONE: Hypothesis = hyp("n > -1", |p| p.n > -1.0);
const N_ZERO: Hypothesis = hyp("n = 0 (no n parameter)", |p| p.n == 0.0);
const GAMMA_ZERO: Hypothesis = hyp("gamma = 0 (undamped)", |p| p.gamma == 0.0);
const GAMMA_NON_NEG: Hypothesis = hyp("gamma >= 0", |p| p.gamma >= 0.0);
const GAMMA_BELOW_ONE: Hypothesis = hyp("0 <= gamma < 1", |p| p.gamma >= 0.0 && p.gamma < 1.0);
const NU_HALF: Hypothesis = hyp("nu >= 1/2", |p| p.nu >= 0.5);
const NU_GT_MINUS_HALF: Hypothesis = hyp("nu > -1/2", |p| p.nu > -0.5);

const B9: [Hypothesis; 3] = [
    N_GT_MINUS_ONE,
    hyp("nu > -(n+2)/2", |p| p.nu > -(p.n + 2.0) / 2.0),
    GAMMA_NON_NEG,
];
const B10: [Hypothesis; 3] = [NU_HALF, GAMMA_ZERO, N_ZERO];
const B11: [Hypothesis; 3] = [
    N_GT_MINUS_ONE,
    hyp("nu > -(n+1)/2", |p| p.nu > -(p.n + 1.0) / 2.0),
    GAMMA_ZERO,
];
const B12_B13: [Hypothesis; 3] = [NU_HALF, GAMMA_BELOW_ONE, N_ZERO];
const B14: [Hypothesis; 3] = [hyp("nu > -3/2", |p| p.nu > -1.5), GAMMA_NON_NEG, N_ZERO];
const B15: [Hypothesis; 3] = [NU_GT_MINUS_HALF, GAMMA_BELOW_ONE, N_ZERO];
const COR: [Hypothesis; 3] = [NU_GT_MINUS_HALF, GAMMA_ZERO, N_ZERO];

impl InequalityId {
    pub const ALL: [InequalityId; 9] = [
        InequalityId::B9Lower,
        InequalityId::B10Upper,
        InequalityId::B11Upper,
        InequalityId::B12Upper,
        InequalityId::B13Upper,
        InequalityId::B14Lower,
        InequalityId::B15Upper,
        InequalityId::CorLower,
        InequalityId::CorUpper,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            InequalityId::B9Lower => "B9_LOWER",
            InequalityId::B10Upper => "B10_UPPER",
            InequalityId::B11Upper => "B11_UPPER",
            InequalityId::B12Upper => "B12_UPPER",
            InequalityId::B13Upper => "B13_UPPER",
            InequalityId::B14Lower => "B14_LOWER",
            InequalityId::B15Upper => "B15_UPPER",
            InequalityId::CorLower => "COR_LOWER",
            InequalityId::CorUpper => "COR_UPPER",
        }
    }

    pub fn is_lower(self) -> bool {
        matches!(
            self,
            InequalityId::B9Lower | InequalityId::B14Lower | InequalityId::CorLower
        )
    }

    pub fn uses_n(self) -> bool {
        matches!(self, InequalityId::B9Lower | InequalityId::B11Upper)
    }

    pub fn uses_gamma(self) -> bool {
        !matches!(
            self,
            InequalityId::B10Upper
                | InequalityId::B11Upper
                | InequalityId::CorLower
                | InequalityId::CorUpper
        )
    }

    pub fn hypotheses(self) -> &'static [Hypothesis] {
        match self {
            InequalityId::B9Lower => &B9,
            InequalityId::B10Upper => &B10,
            InequalityId::B11Upper => &B11,
            InequalityId::B12Upper | InequalityId::B13Upper => &B12_B13,
            InequalityId::B14Lower => &B14,
            InequalityId::B15Upper => &B15,
            InequalityId::CorLower | InequalityId::CorUpper => &COR,
        }
    }

    /// First failing hypothesis, if any.
    pub fn failed_hypothesis(self, p: &BoundPoint) -> Option<&'static str> {
        self.hypotheses()
            .iter()
            .find(|h| !h.holds(p))
            .map(|h| h.condition)
    }

    /// Checks finiteness, the range of x, then every hypothesis.
    pub fn check(self, p: &BoundPoint) -> Result<()> {
        for (name, v) in [("nu", p.nu), ("n", p.n), ("gamma", p.gamma), ("x", p.x)] {
            if !v.is_finite() {
                return Err(domain(format!("{name} must be finite, got {v}")));
            }
        }
        if p.x <= 0.0 {
            return Err(domain(format!("x must be positive, got {}", p.x)));
        }
        if p.x > X_MAX {
            return Err(Error::Overflow(format!("x = {} exceeds {X_MAX}", p.x)));
        }
        match self.failed_hypothesis(p) {
            Some(condition) => Err(Error::Hypothesis {
                inequality: self.tag(),
                condition,
            }),
            None => Ok(()),
        }
    }

    /// The integral the bound is compared against. For the corollary tags this
    /// is int_0^x t^nu L_nu, which is then normalized by x^(-nu).
    pub fn integral_spec(self, p: &BoundPoint) -> Result<IntegralSpec> {
        let BoundPoint { nu, n, gamma, x } = *p;
        match self {
            InequalityId::B9Lower => IntegralSpec::new(nu, nu + n, gamma, x),
            InequalityId::B11Upper => IntegralSpec::new(nu, nu + n, 0.0, x),
            InequalityId::B10Upper | InequalityId::CorLower | InequalityId::CorUpper => {
                IntegralSpec::new(nu, nu, 0.0, x)
            }
            InequalityId::B12Upper | InequalityId::B13Upper => IntegralSpec::new(nu, nu, gamma, x),
            InequalityId::B14Lower | InequalityId::B15Upper => {
                IntegralSpec::new(nu + 1.0, nu, gamma, x)
            }
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_uppercase();
        InequalityId::ALL
            .into_iter()
            .find(|id| id.tag() == wanted)
            .ok_or_else(|| domain(format!("unknown inequality tag '{s}'")))
    }
}

fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("{what} is not finite")))
    }
}

/// e^(-gamma x) x^nu L_(nu+n+1)(x)
pub fn bound_b9_lower(nu: f64, n: f64, gamma: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    InequalityId::B9Lower.check(&BoundPoint::new(nu, n, gamma, x))?;
    let weight = (nu * x.ln() - gamma * x).exp();
    finite(weight * l(nu + n + 1.0, x, cfg)?, "B9 bound")
}

/// x^nu L_nu(x)
pub fn bound_b10_upper(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    InequalityId::B10Upper.check(&BoundPoint::new(nu, 0.0, 0.0, x))?;
    finite(x.powf(nu) * l(nu, x, cfg)?, "B10 bound")
}

/// (x^nu / (2nu+n+1)) [2(nu+n+1) L_(nu+n+1) - (n+1) L_(nu+n+3)
///   - (n+1) x^(nu+n+2) / (sqrt(pi) 2^(nu+n+1) (2nu+n+2) Gamma(nu+n+5/2))]
pub fn bound_b11_upper(nu: f64, n: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    InequalityId::B11Upper.check(&BoundPoint::new(nu, n, 0.0, x))?;
    b11_unchecked(nu, n, x, cfg)
}

fn b11_unchecked(nu: f64, n: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    let m = nu + n;
    let power = ((m + 2.0) * x.ln()
        - LN_SQRT_PI
        - (m + 1.0) * LN_2
        - (2.0 * nu + n + 2.0).ln()
        - ln_gamma_unchecked(m + 2.5))
    .exp();
    let bracket =
        2.0 * (m + 1.0) * l(m + 1.0, x, cfg)? - (n + 1.0) * l(m + 3.0, x, cfg)? - (n + 1.0) * power;
    finite(x.powf(nu) / (2.0 * nu + n + 1.0) * bracket, "B11 bound")
}

/// e^(-gamma x) / (1 - gamma) * int_0^x t^nu L_nu(t) dt
pub fn bound_b12_upper(nu: f64, gamma: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    InequalityId::B12Upper.check(&BoundPoint::new(nu, 0.0, gamma, x))?;
    let undamped = integral_series(&IntegralSpec::new(nu, nu, 0.0, x)?, cfg)?;
    finite((-gamma * x).exp() / (1.0 - gamma) * undamped, "B12 bound")
}

/// e^(-gamma x) / (1 - gamma) times the n = 0 case of [`bound_b11_upper`].
pub fn bound_b13_upper(nu: f64, gamma: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    InequalityId::B13Upper.check(&BoundPoint::new(nu, 0.0, gamma, x))?;
    let undamped = b11_unchecked(nu, 0.0, x, cfg)?;
    finite((-gamma * x).exp() / (1.0 - gamma) * undamped, "B13 bound")
}

/// e^(-gamma x) x^(nu+1) L_(nu+1)(x)
pub fn bound_b14_lower(nu: f64, gamma: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    InequalityId::B14Lower.check(&BoundPoint::new(nu, 0.0, gamma, x))?;
    let weight = ((nu + 1.0) * x.ln() - gamma * x).exp();
    finite(weight * l(nu + 1.0, x, cfg)?, "B14 bound")
}

/// e^(-gamma x) x^(nu+1) L_(nu+1)(x) / (1 - gamma)
pub fn bound_b15_upper(nu: f64, gamma: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    InequalityId::B15Upper.check(&BoundPoint::new(nu, 0.0, gamma, x))?;
    let weight = ((nu + 1.0) * x.ln() - gamma * x).exp();
    finite(weight * l(nu + 1.0, x, cfg)? / (1.0 - gamma), "B15 bound")
}

/// L_nu(x) < F_nu(x) < U_nu(x), with F_nu from the 2F3 representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorollaryTriple {
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
}

fn corollary_upper(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    let l1 = l(nu + 1.0, x, cfg)?;
    let l3 = l(nu + 3.0, x, cfg)?;
    let power = ((nu + 2.0) * x.ln()
        - LN_SQRT_PI
        - (nu + 2.0) * LN_2
        - (2.0 * nu + 1.0).ln()
        - (nu + 1.0).ln()
        - ln_gamma_unchecked(nu + 2.5))
    .exp();
    finite(
        l1 * (1.0 + (1.0 - l3 / l1) / (2.0 * nu + 1.0)) - power,
        "corollary upper bound",
    )
}

pub fn corollary_triple(nu: f64, x: f64, cfg: &SeriesConfig) -> Result<CorollaryTriple> {
    InequalityId::CorLower.check(&BoundPoint::new(nu, 0.0, 0.0, x))?;
    let lower = l(nu + 1.0, x, cfg)?;
    let middle = finite(integral_2f3_form(nu, x, cfg)? * x.powf(-nu), "F_nu(x)")?;
    let upper = corollary_upper(nu, x, cfg)?;
    Ok(CorollaryTriple {
        lower,
        middle,
        upper,
    })
}

/// Value of the bound `id` at `p`, after checking its hypotheses.
pub fn bound_value(id: InequalityId, p: &BoundPoint, cfg: &SeriesConfig) -> Result<f64> {
    id.check(p)?;
    let BoundPoint { nu, n, gamma, x } = *p;
    match id {
        InequalityId::B9Lower => bound_b9_lower(nu, n, gamma, x, cfg),
        InequalityId::B10Upper => bound_b10_upper(nu, x, cfg),
        InequalityId::B11Upper => bound_b11_upper(nu, n, x, cfg),
        InequalityId::B12Upper => bound_b12_upper(nu, gamma, x, cfg),
        InequalityId::B13Upper => bound_b13_upper(nu, gamma, x, cfg),
        InequalityId::B14Lower => bound_b14_lower(nu, gamma, x, cfg),
        InequalityId::B15Upper => bound_b15_upper(nu, gamma, x, cfg),
        InequalityId::CorLower => l(nu + 1.0, x, cfg),
        InequalityId::CorUpper => corollary_upper(nu, x, cfg),
    }
}

/// One evaluated inequality instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub inequality: InequalityId,
    pub point: BoundPoint,
    /// The integral being bounded (for the corollary tags, before the x^(-nu) normalization).
    pub spec: IntegralSpec,
    pub bound_value: f64,
    pub integral_value: f64,
    /// bound - integral for upper bounds, integral - bound for lower bounds.
    pub signed_slack: f64,
    /// signed_slack / integral_value
    pub relative_error: f64,
}

impl BoundReport {
    pub fn holds_with_margin(&self, margin: f64) -> bool {
        self.signed_slack >= -margin * self.integral_value.abs()
    }
}

/// The integral an inequality talks about: series when undamped, quadrature otherwise.
pub fn reference_integral(id: InequalityId, p: &BoundPoint, config: &EvalConfig) -> Result<f64> {
    let spec = id.integral_spec(p)?;
    let v = if spec.gamma == 0.0 {
        integral_series(&spec, &config.series)?
    } else {
        integral_quadrature(&spec, &config.quadrature, &config.series)?
    };
    Ok(match id {
        InequalityId::CorLower | InequalityId::CorUpper => v * p.x.powf(-p.nu),
        _ => v,
    })
}

/// Evaluates bound and integral at `p` and reports the slack.
pub fn evaluate(id: InequalityId, p: &BoundPoint, config: &EvalConfig) -> Result<BoundReport> {
    id.check(p)?;
    let bound_value = bound_value(id, p, &config.series)?;
    let integral_value = reference_integral(id, p, config)?;
    let signed_slack = if id.is_lower() {
        integral_value - bound_value
    } else {
        bound_value - integral_value
    };
    Ok(BoundReport {
        inequality: id,
        point: *p,
        spec: id.integral_spec(p)?,
        bound_value,
        integral_value,
        signed_slack,
        relative_error: signed_slack / integral_value,
    })
}
