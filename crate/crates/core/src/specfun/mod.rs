//! Special functions: ln Gamma, the modified Struve function of the first kind
//! and the generalized hypergeometric series pFq.
//!
//! Every series is generated by a term-ratio recurrence seeded in log space,
//! summed with compensated accumulation, and stopped only once the terms have
//! passed their peak (see [`SeriesConfig`]).

mod gamma;
mod hyper;
mod struve;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gamma::ln_gamma;
pub(crate) use gamma::ln_gamma_unchecked;
pub use hyper::{hyp1f2, hyp2f3, hyp_pfq, HypergeometricArgs};
pub(crate) use struve::{l, LN_GAMMA_THREE_HALVES, LN_SQRT_PI};
pub use struve::{
    struve_l, struve_l_large_x, struve_l_small_x, struve_l_via_1f2, StruveArgs, MIN_ORDER, X_MAX,
};

/// Convergence policy for infinite series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    /// A term counts as negligible once it is at most `rel_tol` times the partial sum.
    pub rel_tol: f64,
    /// Hard cap on the number of terms.
    pub max_terms: usize,
    /// Consecutive negligible terms required after the peak before stopping.
    pub trailing_small: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 10_000,
            trailing_small: 3,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::Config(format!(
                "series rel_tol must be a positive finite number, got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < 1 {
            return Err(Error::Config("series max_terms must be at least 1".into()));
        }
        if self.trailing_small < 1 {
            return Err(Error::Config(
                "series trailing_small must be at least 1".into(),
            ));
        }
        Ok(())
    }
}
