//! Behaviour of a deformed solution as the deformation coefficient goes to zero.

use serde::{Deserialize, Serialize};

use super::constants::SolutionBundle;
use crate::algebra::ParamAssignment;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbePoint {
    pub c1: f64,
    pub value: f64,
    pub tail: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub target: f64,
    pub points: Vec<ProbePoint>,
    /// Relative errors shrink along the sequence.
    pub monotone: bool,
}

impl ProbeReport {
    pub fn last_error(&self) -> f64 {
        self.points.last().map_or(f64::INFINITY, |p| p.relative_error)
    }
}

/// Evaluates the deformed combination at each `c1` (prepended to `coeffs`) against `target`.
pub fn deformation_limit_probe(
    bundle: &SolutionBundle,
    params: &ParamAssignment,
    coeffs: &[f64],
    c1_sequence: &[f64],
    target: f64,
    order: u32,
) -> Result<ProbeReport> {
    let mut points = Vec::new();
    for &c1 in c1_sequence {
        let mut c = vec![c1];
        c.extend_from_slice(coeffs);
        match bundle.evaluate(params, &c, order) {
            Ok((value, tail)) => points.push(ProbePoint {
                c1,
                value,
                tail,
                relative_error: ((value - target) / target).abs(),
            }),
            Err(Error::DivergentArgument(m)) => {
                let usable = points.last().map_or("none".to_string(), |p: &ProbePoint| p.c1.to_string());
                return Err(Error::DivergentArgument(format!("{m} at c1 = {c1}; largest usable c1 = {usable}")));
            }
            Err(e) => return Err(e),
        }
    }
    let monotone = points.windows(2).all(|w| w[1].relative_error <= w[0].relative_error);
    Ok(ProbeReport { target, points, monotone })
}
