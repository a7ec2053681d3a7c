use super::SeriesConfig;
use crate::error::{domain, Result};
use crate::sum::sum_series;

/// Parameters and argument of pFq(a_1..a_p; b_1..b_q; z).
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricArgs {
    a: Vec<f64>,
    b: Vec<f64>,
    z: f64,
}

fn is_non_positive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.round()
}

impl HypergeometricArgs {
    /// Only entire series (p <= q) with z >= 0 are accepted.
    pub fn new(a: Vec<f64>, b: Vec<f64>, z: f64) -> Result<Self> {
        if a.len() > b.len() {
            return Err(domain(format!(
                "only p <= q is supported (got p = {}, q = {})",
                a.len(),
                b.len()
            )));
        }
        if let Some(v) = a.iter().chain(&b).find(|v| !v.is_finite()) {
            return Err(domain(format!(
                "hypergeometric parameter is not finite: {v}"
            )));
        }
        if let Some(v) = b.iter().find(|v| is_non_positive_integer(**v)) {
            return Err(domain(format!(
                "denominator parameter {v} is a non-positive integer"
            )));
        }
        if !z.is_finite() || z < 0.0 {
            return Err(domain(format!(
                "hypergeometric argument must be finite and z >= 0, got {z}"
            )));
        }
        Ok(Self { a, b, z })
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// Generalized hypergeometric series sum_k prod (a_i)_k / prod (b_j)_k * z^k / k!.
///
/// Terminates naturally when some a_i is a non-positive integer.
pub fn hyp_pfq(args: &HypergeometricArgs, cfg: &SeriesConfig) -> Result<f64> {
    cfg.validate()?;
    let z = args.z;
    let mut term = 1.0;
    sum_series("hyp_pfq", cfg, 1.0, |k| {
        let j = (k - 1) as f64;
        let num: f64 = args.a.iter().map(|a| a + j).product();
        let den: f64 = args.b.iter().map(|b| b + j).product();
        term *= num / den * z / k as f64;
        term
    })
}

pub fn hyp1f2(a: f64, b1: f64, b2: f64, z: f64, cfg: &SeriesConfig) -> Result<f64> {
    hyp_pfq(&HypergeometricArgs::new(vec![a], vec![b1, b2], z)?, cfg)
}

pub fn hyp2f3(
    a1: f64,
    a2: f64,
    b1: f64,
    b2: f64,
    b3: f64,
    z: f64,
    cfg: &SeriesConfig,
) -> Result<f64> {
    hyp_pfq(
        &HypergeometricArgs::new(vec![a1, a2], vec![b1, b2, b3], z)?,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn z_zero_is_one() {
        let cfg = SeriesConfig::default();
        assert_eq!(hyp2f3(1.0, 1.0, 1.5, 1.5, 2.0, 0.0, &cfg).unwrap(), 1.0);
        assert_eq!(hyp1f2(-3.7, 0.2, 9.0, 0.0, &cfg).unwrap(), 1.0);
    }

    #[test]
    fn zero_f_zero_is_exp() {
        let cfg = SeriesConfig::default();
        let args = HypergeometricArgs::new(vec![], vec![], 12.5).unwrap();
        let v = hyp_pfq(&args, &cfg).unwrap();
        assert!((v / 12.5f64.exp() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn guards() {
        assert!(matches!(
            HypergeometricArgs::new(vec![1.0], vec![0.0, 2.0], 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            HypergeometricArgs::new(vec![1.0], vec![-3.0, 2.0], 1.0),
            Err(Error::Domain(_))
        ));
        assert!(HypergeometricArgs::new(vec![1.0], vec![-2.5, 2.0], 1.0).is_ok());
        assert!(HypergeometricArgs::new(vec![1.0, 1.0], vec![2.0], 0.5).is_err());
        assert!(HypergeometricArgs::new(vec![1.0], vec![2.0], -0.5).is_err());
    }
}
