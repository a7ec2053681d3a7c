use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{evaluate, BoundPoint, InequalityId};
use crate::error::{domain, Error, Result};
use crate::EvalConfig;

/// Limit being approached by a probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Direction {
    AtZero,
    AtInfinity,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::AtZero => "AT_ZERO",
            Direction::AtInfinity => "AT_INFINITY",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "AT_ZERO" | "ZERO" => Ok(Direction::AtZero),
            "AT_INFINITY" | "INFINITY" => Ok(Direction::AtInfinity),
            other => Err(domain(format!("unknown probe direction '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeSample {
    pub x: f64,
    /// bound / integral
    pub ratio: f64,
}

/// Ratios bound/integral of an undamped (gamma = 0, n = 0) inequality, ordered
/// along the approach to the limit: decreasing x for `AtZero`, increasing x for
/// `AtInfinity`.
pub fn tightness_probe(
    id: InequalityId,
    nu: f64,
    direction: Direction,
    points: &[f64],
    config: &EvalConfig,
) -> Result<Vec<ProbeSample>> {
    let mut xs = points.to_vec();
    match direction {
        Direction::AtZero => xs.sort_by(|a, b| b.total_cmp(a)),
        Direction::AtInfinity => xs.sort_by(f64::total_cmp),
    }
    xs.into_iter()
        .map(|x| {
            let r = evaluate(id, &BoundPoint::new(nu, 0.0, 0.0, x), config)?;
            Ok(ProbeSample {
                x,
                ratio: r.bound_value / r.integral_value,
            })
        })
        .collect()
}

/// True when |ratio - 1| strictly shrinks along the samples.
pub fn approaches_one(samples: &[ProbeSample]) -> bool {
    samples
        .windows(2)
        .all(|w| (w[1].ratio - 1.0).abs() < (w[0].ratio - 1.0).abs())
}
