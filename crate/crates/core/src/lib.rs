//! Numerics for the modified Struve function of the first kind L_nu(x).
//!
//! - [`specfun`]: ln Gamma, L_nu(x), its small/large-argument forms and the
//!   pFq series.
//! - [`integrate`]: int_0^x e^(-gamma t) t^p L_mu(t) dt by term-by-term series
//!   (gamma = 0) and by split analytic/adaptive quadrature (any gamma >= 0).
//! - [`bounds`]: closed-form lower and upper bounds for those integrals, with
//!   their validity ranges enforced.
//! - [`verify`]: sweeps, relative-error tables and tightness probes.
//!
//! All functions are pure; nothing here holds shared mutable state.

// Coefficient tables carry more digits than an f64 holds, and `!(a <= b)`
// is used on purpose so that NaN lands on the failing side.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod integrate;
pub mod specfun;
mod sum;
pub mod verify;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};
pub use integrate::{IntegralSpec, QuadratureConfig};
pub use specfun::SeriesConfig;

/// Series and quadrature settings used together by bounds and verification.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub series: SeriesConfig,
    pub quadrature: QuadratureConfig,
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        self.series.validate()?;
        self.quadrature.validate()
    }
}
