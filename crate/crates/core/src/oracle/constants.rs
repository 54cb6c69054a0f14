//! Integration constants `K_r` in `I = sum_r K_r phi_r`.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::quadrature::{continued_quadrature, QuadratureSpec};
use crate::algebra::{rat, GammaFactor, ParamAssignment, ParamLinear};
use crate::error::{Error, Result};
use crate::gkz::matrix::det_i64;
use crate::gkz::{AMatrix, FakeExponent};
use crate::series::{evaluate, CanonicalSeries};

/// `prod_{gamma_i != 0} Gamma(-gamma_i) / prod_k Gamma(beta_k) / |det A_S|`, with `S`
/// the columns where `gamma` is nonzero. This is the value of the integral once the
/// coefficients at the zero positions are set to zero.
pub fn gamma_constant(a: &AMatrix, gamma: &FakeExponent, betas: &[ParamLinear]) -> Result<GammaFactor> {
    let zeros = gamma.zeros();
    if zeros.is_empty() && a.codim() > 0 {
        return Err(Error::NoZeroComponent(format!("root ({}) has no zero component", join(&gamma.gamma))));
    }
    let support: Vec<usize> = (0..a.ncols()).filter(|j| !zeros.contains(j)).collect();
    let num: Vec<ParamLinear> = support.iter().map(|&j| -gamma.gamma[j].clone()).collect();
    let mut k = GammaFactor::new(num, betas.to_vec());
    if support.len() == a.nrows() {
        let sub: Vec<Vec<i64>> = a.rows.iter().map(|r| support.iter().map(|&j| r[j]).collect()).collect();
        let d = det_i64(&sub).abs();
        if d > 1 {
            k.scale = rat(1, d);
        }
    }
    Ok(k.simplified())
}

fn join(v: &[ParamLinear]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// `beta_k = -kappa_k` for the leading rows that are indicator vectors of disjoint column blocks.
pub fn block_betas(a: &AMatrix, kappa: &[ParamLinear]) -> Vec<ParamLinear> {
    let mut covered = vec![false; a.ncols()];
    let mut betas = Vec::new();
    for (row, k) in a.rows.iter().zip(kappa) {
        if covered.iter().all(|c| *c) {
            break;
        }
        let indicator = row.iter().all(|&x| x == 0 || x == 1);
        let disjoint = row.iter().zip(&covered).all(|(&x, &c)| x == 0 || !c);
        if !indicator || !disjoint {
            break;
        }
        for (c, &x) in covered.iter_mut().zip(row) {
            *c |= x == 1;
        }
        betas.push(-k.clone());
    }
    betas
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "provenance", rename_all = "kebab-case")]
pub enum Constant {
    GammaPrescription { factor: GammaFactor },
    NumericSolve { value: f64 },
}

impl Constant {
    pub fn value(&self, params: &ParamAssignment) -> Result<f64> {
        match self {
            Constant::GammaPrescription { factor } => factor.eval(params),
            Constant::NumericSolve { value } => Ok(*value),
        }
    }

    pub fn provenance(&self) -> &'static str {
        match self {
            Constant::GammaPrescription { .. } => "gamma-prescription",
            Constant::NumericSolve { .. } => "numeric-solve",
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::GammaPrescription { factor } => write!(f, "{factor}"),
            Constant::NumericSolve { value } => write!(f, "{value:.12e}"),
        }
    }
}

/// `I = sum_i K_i phi_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionBundle {
    pub series: Vec<CanonicalSeries>,
    pub constants: Vec<Constant>,
}

impl SolutionBundle {
    pub fn new(series: Vec<CanonicalSeries>, constants: Vec<Constant>) -> Result<Self> {
        if series.len() != constants.len() {
            return Err(Error::DimensionMismatch(format!("{} series, {} constants", series.len(), constants.len())));
        }
        Ok(Self { series, constants })
    }

    /// Gamma-prescription constants for every root.
    pub fn from_gamma_prescription(a: &AMatrix, series: Vec<CanonicalSeries>, betas: &[ParamLinear]) -> Result<Self> {
        let constants = series
            .iter()
            .map(|s| gamma_constant(a, &s.gamma, betas).map(|factor| Constant::GammaPrescription { factor }))
            .collect::<Result<_>>()?;
        Self::new(series, constants)
    }

    /// Value and summed tail estimate.
    pub fn evaluate(&self, params: &ParamAssignment, coeffs: &[f64], order: u32) -> Result<(f64, f64)> {
        let mut value = 0.0;
        let mut tail = 0.0;
        for (s, k) in self.series.iter().zip(&self.constants) {
            let kv = k.value(params)?;
            if kv == 0.0 {
                continue;
            }
            let (v, t) = evaluate(s, params, coeffs, order)?;
            value += kv * v;
            tail += (kv * t).abs();
        }
        Ok((value, tail))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericConstants {
    pub constants: Vec<f64>,
    pub residual: f64,
    pub condition: f64,
}

/// Least-squares solve of `[phi_j(c_k)] K = [I(c_k)]`.
pub fn solve_constants(phi: &[Vec<f64>], values: &[f64]) -> Result<NumericConstants> {
    let rows = phi.len();
    let cols = phi.first().map_or(0, |r| r.len());
    if rows < cols || values.len() != rows || cols == 0 {
        return Err(Error::DimensionMismatch(format!("{rows} samples for {cols} constants")));
    }
    let m = DMatrix::from_fn(rows, cols, |i, j| phi[i][j]);
    // column scaling so the condition number reflects the geometry, not the units
    let norms: Vec<f64> = (0..cols).map(|j| m.column(j).norm()).collect();
    if norms.iter().any(|n| *n == 0.0 || !n.is_finite()) {
        return Err(Error::IllConditioned(f64::INFINITY));
    }
    let scaled = DMatrix::from_fn(rows, cols, |i, j| m[(i, j)] / norms[j]);
    let svd = scaled.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if condition > 1e8 {
        return Err(Error::IllConditioned(condition));
    }
    let b = DVector::from_column_slice(values);
    let x = svd.solve(&b, 0.0).map_err(|_| Error::IllConditioned(condition))?;
    let residual = (&scaled * &x - &b).norm() / b.norm().max(f64::MIN_POSITIVE);
    Ok(NumericConstants { constants: x.iter().zip(&norms).map(|(v, n)| v / n).collect(), residual, condition })
}

/// Constants from quadrature values of `int z^alpha g^(-beta) dz/z` at the sample coefficients.
/// Requires a single homogeneity block.
pub fn numeric_constants(
    series: &[CanonicalSeries],
    params: &ParamAssignment,
    alpha: &[f64],
    beta: f64,
    samples: &[Vec<f64>],
    order: u32,
    tolerance: f64,
) -> Result<NumericConstants> {
    let a = &series.first().ok_or_else(|| Error::InvalidSpec("no series".into()))?.amatrix;
    let exponents: Vec<Vec<u32>> = a.exponent_columns().iter().map(|c| c.iter().map(|&x| x as u32).collect()).collect();
    let mut phi = Vec::with_capacity(samples.len());
    let mut values = Vec::with_capacity(samples.len());
    for c in samples {
        let row = series
            .iter()
            .map(|s| evaluate(s, params, c, order).map(|(v, _)| v))
            .collect::<Result<Vec<f64>>>()?;
        phi.push(row);
        let mut spec = QuadratureSpec::new(exponents.clone(), c.clone(), alpha.to_vec(), beta);
        spec.target_tolerance = tolerance;
        values.push(continued_quadrature(&spec)?.value);
    }
    solve_constants(&phi, &values)
}
